#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "torusmirror/bundle_objects.hpp"

namespace torusmirror {

std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible generator. Stream `s` of seed `seed` is seeded with
/// splitmix64(seed ^ splitmix64(s)); doubles use the top 53 bits, so results
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

RealMatrix random_real(Rng& rng, int rows, int cols, double lo, double hi);
IntMatrix random_int(Rng& rng, int rows, int cols, int lo, int hi);

/// Q diag(lambda) Q^t with eigenvalues in [0.5, 2].
RealMatrix random_spd(Rng& rng, int n);

/// Re T entries in [-1, 1], symmetric part of Im T with eigenvalues in
/// [0.5, 2]; when `symmetric_im` is false Im T also gets an antisymmetric part.
ComplexTorus random_torus(Rng& rng, int n, bool symmetric_im = true);

/// Integer matrix with entries in [-2, 2] for which det(-tau - iY^t) is not small.
IntMatrix random_tau(Rng& rng, const ComplexTorus& torus);

enum class ObjectFamily {
  kSymmetricAffine,     // T symmetric, a = m I
  kDiagonalAffine,      // T and a diagonal
  kFourierHolomorphic,  // T = (alpha + i) Y, a = m I, modes along Y k
  kNonHolomorphic,      // |A T - (A T)^t| > 0.1 somewhere on the grid; needs n >= 2
};

const char* to_string(ObjectFamily family);

struct GeneratedObject {
  ObjectFamily family;
  ComplexTorus torus;
  IntMatrix tau;
  SectionData section;
  bool constructed_holomorphic = false;
};

GeneratedObject random_object(Rng& rng, int n, ObjectFamily family);

/// Alternates holomorphic and non-holomorphic families (holomorphic only for n = 1); object `index` is
/// drawn from its own stream so any single object can be regenerated.
GeneratedObject mixed_object(std::uint64_t seed, std::uint64_t index, int n);

}  // namespace torusmirror
