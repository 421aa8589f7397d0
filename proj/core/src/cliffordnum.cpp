#include "hyperpotential/cliffordnum.hpp"

#include "hyperpotential/errors.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace hyperpotential {

Multivector::Multivector(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionMismatch("Multivector dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
}

Multivector Multivector::scalar(int dim, double value) { return blade(dim, 0, value); }

Multivector Multivector::basis(int dim, int index, double coeff) {
  if (index < 0 || index >= dim) {
    throw DimensionMismatch("basis index out of range");
  }
  return blade(dim, Blade{1} << index, coeff);
}

Multivector Multivector::blade(int dim, Blade b, double coeff) {
  Multivector v(dim);
  if (b >> dim) {
    throw DimensionMismatch("blade uses a basis vector outside the algebra");
  }
  v.add_term(b, coeff);
  return v;
}

Multivector Multivector::vector(int dim, std::span<const double> components) {
  if (static_cast<int>(components.size()) != dim) {
    throw DimensionMismatch("vector needs one component per basis vector");
  }
  Multivector v(dim);
  for (int j = 0; j < dim; ++j) {
    v.add_term(Blade{1} << j, components[j]);
  }
  return v;
}

Multivector Multivector::space_vector(int dim, std::span<const double> components) {
  if (static_cast<int>(components.size()) != dim - 1) {
    throw DimensionMismatch("space vector needs dim-1 components");
  }
  Multivector v(dim);
  for (int j = 1; j < dim; ++j) {
    v.add_term(Blade{1} << j, components[j - 1]);
  }
  return v;
}

double Multivector::coeff(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? 0.0 : it->second;
}

void Multivector::add_term(Blade b, double c) {
  if (c == 0.0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) {
      terms_.erase(it);
    }
  }
}

Multivector Multivector::operator+(const Multivector& rhs) const {
  Multivector r = *this;
  r += rhs;
  return r;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  if (rhs.dim_ != dim_) {
    throw DimensionMismatch("adding multivectors of different dimension");
  }
  for (const auto& [b, c] : rhs.terms_) {
    add_term(b, c);
  }
  return *this;
}

Multivector Multivector::operator-() const { return *this * -1.0; }

Multivector Multivector::operator-(const Multivector& rhs) const { return *this + (-rhs); }

Multivector Multivector::operator*(double s) const {
  Multivector r(dim_);
  for (const auto& [b, c] : terms_) {
    r.add_term(b, c * s);
  }
  return r;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (const auto& [b, c] : terms_) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

double Multivector::norm() const {
  double s = 0.0;
  for (const auto& [b, c] : terms_) {
    s += c * c;
  }
  return std::sqrt(s);
}

std::string Multivector::str() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << c;
    if (b != 0) {
      os << "*e";
      for (int j = 0; j < dim_; ++j) {
        if (b & (Blade{1} << j)) {
          os << j;
        }
      }
    }
  }
  return os.str();
}

int blade_product_sign(Blade a, Blade b) {
  // Count transpositions needed to move every factor of b past the larger
  // factors of a, then contract each shared e_j with e_j^2 = -1.
  int swaps = 0;
  for (Blade rest = a >> 1; rest != 0; rest >>= 1) {
    swaps += std::popcount(rest & b);
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionMismatch("geometric product of multivectors of different dimension");
  }
  Multivector r(a.dim_);
  for (const auto& [ba, ca] : a.terms_) {
    for (const auto& [bb, cb] : b.terms_) {
      r.add_term(ba ^ bb, blade_product_sign(ba, bb) * ca * cb);
    }
  }
  return r;
}

Multivector e0_bar(int dim) { return Multivector::basis(dim, 0, -1.0); }

std::pair<Multivector, Multivector> e0_split(const Multivector& f) {
  Multivector f1(f.dim());
  Multivector f2(f.dim());
  for (const auto& [b, c] : f.terms()) {
    if (b & 1u) {
      // c e_0 e_A = ebar_0 (-c e_A)
      f2 += Multivector::blade(f.dim(), b & ~Blade{1}, -c);
    } else {
      f1 += Multivector::blade(f.dim(), b, c);
    }
  }
  return {f1, f2};
}

bool approx_equal(const Multivector& a, const Multivector& b, double tol) {
  return (a - b).max_abs() <= tol;
}

} // namespace hyperpotential
