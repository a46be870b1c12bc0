// Permutation groups: stabilizer chains, membership and random elements.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/perm.hpp"
#include "cgt/random.hpp"
#include "cgt/rational.hpp"

namespace cgt {

// Base and strong generating set. Level i holds the strong generators
// fixing base[0..i-1] and the orbit of base[i] under them, with transversal
// u[beta] mapping base[i] to beta.
class StabilizerChain {
public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<int> slot;  // point -> index into orbit/transversal, -1 if absent
    std::vector<Permutation> transversal;
  };

  // Randomized Schreier-Sims from `seed`, then a deterministic check of all
  // Schreier generators, so the result is exact whatever the seed.
  StabilizerChain(std::size_t degree, const std::vector<Permutation>& gens, std::uint64_t seed = 1,
                  int quiet_rounds = 20);

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<Point> base() const;
  Integer order() const;

  // Residue of g after stripping through the chain, and the level where
  // stripping stopped (levels().size() if it ran through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;
  // Exactly uniform: a product of uniformly chosen transversal elements.
  Permutation uniform_element(Rng& rng) const;

private:
  void insert(const Permutation& h, std::size_t level);
  void rebuild_orbit(Level& l);
  bool verify_once();

  std::size_t degree_;
  std::vector<Level> levels_;
};

// Product replacement with an accumulator ("rattle"): a list of `slots`
// group elements seeded from the generators, mixed by random products.
class ProductReplacement {
public:
  ProductReplacement(std::size_t degree, const std::vector<Permutation>& gens, std::uint64_t seed,
                     int slots = 10, int burn_in = 50);
  Permutation next();
  Rng& rng() { return rng_; }

private:
  void step();
  Rng rng_;
  std::vector<Permutation> slots_;
  Permutation acc_;
};

class PermGroup {
public:
  PermGroup(std::size_t degree, std::vector<Permutation> gens, std::uint64_t seed = 1);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const StabilizerChain& chain() const { return *chain_; }
  Integer order() const { return chain_->order(); }
  bool contains(const Permutation& g) const;

private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<const StabilizerChain> chain_;
};

// Exact order of <gens> without retaining the chain.
Integer group_order(std::size_t degree, const std::vector<Permutation>& gens,
                    std::uint64_t seed = 1);

// Where random conjugators come from.
enum class RandomMode { ProductReplacement, Uniform };

class RandomSource {
public:
  RandomSource(const PermGroup& g, std::uint64_t seed, RandomMode mode = RandomMode::ProductReplacement);
  Permutation next();
  Rng& rng();

private:
  const PermGroup* group_;
  RandomMode mode_;
  Rng uniform_rng_;
  std::unique_ptr<ProductReplacement> pr_;
};

// rep^g for g drawn from src. Throws MembershipError if rep is not in G.
Permutation conjugate_sample(const Permutation& rep, const PermGroup& g, RandomSource& src);

struct NamedClass {
  std::string name;
  Permutation rep;
};

struct GroupFile {
  std::string name;
  std::size_t degree = 0;
  Integer stated_order = 0;  // 0 if absent
  std::vector<Permutation> generators;
  std::vector<NamedClass> classes;
};

// {"name", "degree", "order"?, "generators": [cycles...],
//  "classes"?: [{"name", "rep"}]}. Throws ParseError; an order that the
// chain does not reproduce raises InvariantError in load_group.
GroupFile parse_group_file(std::string_view document);
GroupFile load_group_file(const std::filesystem::path& path);
std::string print_group_file(const GroupFile& g);

}  // namespace cgt
