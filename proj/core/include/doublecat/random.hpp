#pragma once

#include <cstdint>
#include <random>

#include "doublecat/groth.hpp"

namespace dc {

// Bounds for generated instances. Categories are free on a random DAG with edge weights
// in Z/m, hom sets being the reachable path weights; squares are the boundaries whose
// weights balance, each carrying a label in Z/k.
struct RandomSpec {
  std::uint64_t seed = 0;
  int max_objects = 3;
  int max_weight = 2;     // m is drawn from [1, max_weight]
  int max_labels = 2;     // k is drawn from [1, max_labels]
  double edge_prob = 0.5;
  int max_squares = 160;  // larger draws are resampled
  int max_elements = 3;   // per profunctor cell in generated presheaves
  int attempts = 64;
};

struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

CatRef random_category(Rng& rng, int max_objects, int max_weight, double edge_prob, const std::string& prefix = "x");
DblRef random_double_category(Rng& rng, const RandomSpec& spec);
DblRef random_double_category(const RandomSpec& spec);

// ∂∂ of the projection of ∫∫ of a random product / coproduct of representables and
// constants. Throws BoundError if no draw respects max_elements.
PshRef random_presheaf(Rng& rng, const DblRef& base, const RandomSpec& spec);

// Sums and composites of separable profunctors C(-, c) x C'(c', -), plus identities.
ProfRef random_profunctor(Rng& rng, const CatRef& c, const CatRef& cp);

}  // namespace dc
