#include "torusmirror/random.hpp"

#include <cmath>

namespace torusmirror {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

RealMatrix random_real(Rng& rng, int rows, int cols, double lo, double hi) {
  RealMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  }
  return m;
}

IntMatrix random_int(Rng& rng, int rows, int cols, int lo, int hi) {
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.integer(lo, hi);
  }
  return m;
}

RealMatrix random_spd(Rng& rng, int n) {
  const RealMatrix q = Eigen::HouseholderQR<RealMatrix>(random_real(rng, n, n, -1.0, 1.0)).householderQ();
  RealVector lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = rng.uniform(0.5, 2.0);
  const RealMatrix y = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (y + y.transpose());
}

ComplexTorus random_torus(Rng& rng, int n, bool symmetric_im) {
  const RealMatrix x = random_real(rng, n, n, -1.0, 1.0);
  RealMatrix y = random_spd(rng, n);
  if (!symmetric_im) {
    const RealMatrix r = random_real(rng, n, n, -0.3, 0.3);
    y += r - r.transpose();
  }
  return ComplexTorus(x, y);
}

IntMatrix random_tau(Rng& rng, const ComplexTorus& torus) {
  const int n = torus.n();
  const ComplexMatrix iyt = Complex(0.0, 1.0) * torus.im().transpose().cast<Complex>();
  for (;;) {
    const IntMatrix tau = random_int(rng, n, n, -2, 2);
    const ComplexMatrix m = -tau.cast<double>().cast<Complex>() - iyt;
    if (std::abs(m.determinant()) > 1e-3) return tau;
  }
}

const char* to_string(ObjectFamily family) {
  switch (family) {
    case ObjectFamily::kSymmetricAffine: return "symmetric-affine";
    case ObjectFamily::kDiagonalAffine: return "diagonal-affine";
    case ObjectFamily::kFourierHolomorphic: return "fourier-holomorphic";
    case ObjectFamily::kNonHolomorphic: return "non-holomorphic";
  }
  return "unknown";
}

namespace {

IntVector random_mode_key(Rng& rng, int n) {
  for (;;) {
    IntVector k(n);
    for (int i = 0; i < n; ++i) k(i) = rng.integer(-2, 2);
    for (int i = 0; i < n; ++i) {
      if (k(i) != 0) {
        if (k(i) < 0) k = -k;
        return k;
      }
    }
  }
}

void add_modes(Rng& rng, SectionData& s, int count, const RealMatrix* along) {
  const int n = s.n();
  for (int m = 0; m < count; ++m) {
    const IntVector k = random_mode_key(rng, n);
    bool duplicate = false;
    for (const auto& existing : s.modes) duplicate = duplicate || existing.k == k;
    if (duplicate) continue;
    FourierMode mode{k, RealVector(n), RealVector(n)};
    if (along != nullptr) {
      // Directions parallel to Y k keep A T symmetric for T = (alpha + i) Y.
      const RealVector dir = *along * k.cast<double>();
      mode.u = rng.uniform(-0.05, 0.05) * dir;
      mode.v = rng.uniform(-0.05, 0.05) * dir;
    } else {
      mode.u = random_real(rng, n, 1, -0.05, 0.05);
      mode.v = random_real(rng, n, 1, -0.05, 0.05);
    }
    s.modes.push_back(std::move(mode));
  }
}

SectionData base_section(Rng& rng, IntMatrix a) {
  const auto n = static_cast<int>(a.rows());
  return SectionData{std::move(a), random_real(rng, n, 1, -1.0, 1.0), {}, random_real(rng, n, 1, -1.0, 1.0)};
}

}  // namespace

GeneratedObject random_object(Rng& rng, int n, ObjectFamily family) {
  switch (family) {
    case ObjectFamily::kSymmetricAffine: {
      const RealMatrix x0 = random_real(rng, n, n, -1.0, 1.0);
      const RealMatrix x = 0.5 * (x0 + x0.transpose());
      const ComplexTorus torus(x, random_spd(rng, n));
      const IntMatrix a = rng.integer(-3, 3) * IntMatrix::Identity(n, n);
      IntMatrix tau = random_tau(rng, torus);
      return {family, torus, tau, base_section(rng, a), true};
    }
    case ObjectFamily::kDiagonalAffine: {
      RealMatrix x = RealMatrix::Zero(n, n);
      RealMatrix y = RealMatrix::Zero(n, n);
      IntMatrix a = IntMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        x(i, i) = rng.uniform(-1.0, 1.0);
        y(i, i) = rng.uniform(0.5, 2.0);
        a(i, i) = rng.integer(-3, 3);
      }
      const ComplexTorus torus(x, y);
      IntMatrix tau = random_tau(rng, torus);
      return {family, torus, tau, base_section(rng, a), true};
    }
    case ObjectFamily::kFourierHolomorphic: {
      const RealMatrix y = random_spd(rng, n);
      const double alpha = rng.uniform(-1.0, 1.0);
      const ComplexTorus torus(alpha * y, y);
      const IntMatrix a = rng.integer(-3, 3) * IntMatrix::Identity(n, n);
      SectionData s = base_section(rng, a);
      add_modes(rng, s, rng.integer(1, 3), &y);
      IntMatrix tau = random_tau(rng, torus);
      return {family, torus, tau, s, true};
    }
    case ObjectFamily::kNonHolomorphic: {
      if (n < 2) throw Error(ErrorKind::kInvalidArgument, "every object is holomorphic when n = 1");
      const ComplexTorus torus = random_torus(rng, n, rng.coin());
      IntMatrix tau = random_tau(rng, torus);
      const bool with_modes = rng.coin();
      for (;;) {
        SectionData s = base_section(rng, random_int(rng, n, n, -3, 3));
        if (with_modes) add_modes(rng, s, rng.integer(1, 2), nullptr);
        const BundleObject obj(torus, tau, s);
        if (is_holomorphic(obj).max_asymmetry > 0.1) return {family, torus, tau, s, false};
      }
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown object family");
}

GeneratedObject mixed_object(std::uint64_t seed, std::uint64_t index, int n) {
  static constexpr ObjectFamily kHolomorphic[] = {ObjectFamily::kSymmetricAffine, ObjectFamily::kDiagonalAffine,
                                                  ObjectFamily::kFourierHolomorphic};
  Rng rng(seed, index);
  const bool holomorphic = index % 2 == 0 || n == 1;
  const ObjectFamily family = holomorphic ? kHolomorphic[(index / 2) % 3] : ObjectFamily::kNonHolomorphic;
  return random_object(rng, n, family);
}

}  // namespace torusmirror
