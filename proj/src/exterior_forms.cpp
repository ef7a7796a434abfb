#include "torusmirror/exterior_forms.hpp"

#include <bit>
#include <numeric>
#include <vector>

namespace torusmirror {

namespace {

// (-1)^(number of pairs (i in a, j in b) with i > j): the sign picked up when
// sorting the concatenation a ++ b.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

int permutation_parity(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    transpositions += static_cast<int>(len) - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

void require_same_dimension(const ExteriorForm& f, const ExteriorForm& g) {
  if (f.dimension() != g.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "forms live on spaces of different dimension");
  }
}

}  // namespace

ExteriorForm::ExteriorForm(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  if (dimension < 0 || dimension > kMaxDimension) {
    throw Error(ErrorKind::kInvalidArgument, "form dimension must be between 0 and 8");
  }
  // Degrees above the dimension are allowed; such forms are identically zero.
  if (degree < 0) {
    throw Error(ErrorKind::kInvalidArgument, "form degree must be nonnegative");
  }
}

ExteriorForm ExteriorForm::scalar(int dimension, Complex value) {
  ExteriorForm f(dimension, 0);
  f.add(0, value);
  return f;
}

ExteriorForm ExteriorForm::basis(int dimension, int index) {
  if (index < 0 || index >= dimension) {
    throw Error(ErrorKind::kInvalidArgument, "basis index out of range");
  }
  ExteriorForm f(dimension, 1);
  f.add(1u << index, 1.0);
  return f;
}

Complex ExteriorForm::coefficient(std::uint32_t mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? Complex{} : it->second;
}

void ExteriorForm::add(std::uint32_t mask, Complex value) {
  if (std::popcount(mask) != degree_ || (mask >> dimension_) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "index subset does not match the form degree");
  }
  if (value == Complex{}) return;
  auto [it, inserted] = terms_.emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

ExteriorForm ExteriorForm::operator+(const ExteriorForm& other) const {
  require_same_dimension(*this, other);
  if (other.degree_ != degree_) {
    throw Error(ErrorKind::kInvalidArgument, "cannot add forms of different degree");
  }
  ExteriorForm out = *this;
  for (const auto& [mask, c] : other.terms_) out.add(mask, c);
  return out;
}

ExteriorForm ExteriorForm::operator-(const ExteriorForm& other) const { return *this + other * Complex(-1.0); }

ExteriorForm ExteriorForm::operator*(Complex s) const {
  ExteriorForm out(dimension_, degree_);
  for (const auto& [mask, c] : terms_) out.add(mask, c * s);
  return out;
}

ExteriorForm wedge(const ExteriorForm& f, const ExteriorForm& g) {
  require_same_dimension(f, g);
  ExteriorForm out(f.dimension(), f.degree() + g.degree());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if ((a & b) != 0) continue;
      out.add(a | b, static_cast<double>(merge_sign(a, b)) * ca * cb);
    }
  }
  return out;
}

ExteriorForm two_form_from_matrix(const ComplexMatrix& omega, const ToleranceConfig& tol) {
  if (omega.rows() != omega.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "2-form coefficient matrix must be square");
  }
  if (!is_antisymmetric(omega, tol)) {
    throw Error(ErrorKind::kInvalidArgument, "2-form coefficient matrix is not antisymmetric");
  }
  const int d = static_cast<int>(omega.rows());
  ExteriorForm f(d, 2);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) f.add((1u << i) | (1u << j), omega(i, j));
  }
  return f;
}

ExteriorForm two_form_from_matrix(const RealMatrix& omega, const ToleranceConfig& tol) {
  return two_form_from_matrix(ComplexMatrix(omega.cast<Complex>()), tol);
}

ComplexMatrix to_matrix(const ExteriorForm& f) {
  if (f.degree() != 2) {
    throw Error(ErrorKind::kInvalidArgument, "only 2-forms have a coefficient matrix");
  }
  ComplexMatrix m = ComplexMatrix::Zero(f.dimension(), f.dimension());
  for (const auto& [mask, c] : f.terms()) {
    const int i = std::countr_zero(mask);
    const int j = std::countr_zero(mask & (mask - 1));
    m(i, j) = c;
    m(j, i) = -c;
  }
  return m;
}

int interleaving_sign(int n) {
  std::vector<int> perm;
  for (int k = 0; k < n; ++k) {
    perm.push_back(k);
    perm.push_back(n + k);
  }
  return permutation_parity(perm);
}

Complex top_coefficient(const ExteriorForm& f) {
  if (f.degree() != f.dimension() || f.dimension() % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "top coefficient needs a form of full even degree");
  }
  const std::uint32_t full = f.dimension() == 0 ? 0u : (1u << f.dimension()) - 1u;
  return static_cast<double>(interleaving_sign(f.dimension() / 2)) * f.coefficient(full);
}

ExteriorForm power(const ExteriorForm& f, int k) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "negative wedge power");
  ExteriorForm out = ExteriorForm::scalar(f.dimension(), 1.0);
  for (int i = 0; i < k; ++i) out = wedge(out, f);
  return out;
}

ExteriorForm pullback(const ExteriorForm& f, const ComplexMatrix& map) {
  const int d = f.dimension();
  if (map.rows() != d || map.cols() != d) {
    throw Error(ErrorKind::kInvalidArgument, "pullback map must be square of the form's dimension");
  }
  // e^i o map = sum_j map(i, j) e^j
  std::vector<ExteriorForm> pulled;
  for (int i = 0; i < d; ++i) {
    ExteriorForm e(d, 1);
    for (int j = 0; j < d; ++j) e.add(1u << j, map(i, j));
    pulled.push_back(std::move(e));
  }
  ExteriorForm out(d, f.degree());
  for (const auto& [mask, c] : f.terms()) {
    ExteriorForm term = ExteriorForm::scalar(d, c);
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      term = wedge(term, pulled[static_cast<std::size_t>(std::countr_zero(rest))]);
    }
    out = out + term;
  }
  return out;
}

ExteriorForm pullback(const ExteriorForm& f, const RealMatrix& map) {
  return pullback(f, ComplexMatrix(map.cast<Complex>()));
}

}  // namespace torusmirror
