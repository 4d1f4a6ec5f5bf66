#include "rmt/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmt/error.hpp"
#include "rmt/parallel.hpp"

namespace rmt {
namespace {

using cplx = std::complex<double>;

struct Permutation {
  std::array<int, 7> image{};
  int sign = 1;
};

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation perm;
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      perm.image[i] = p[i];
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    perm.sign = inversions % 2 == 0 ? 1 : -1;
    out.push_back(perm);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

double binom(int n, int k) {
  static constexpr double table[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  return table[n][k];
}

// Expectations of the building blocks of a monomial, given a moment profile.
class EntryMoments {
 public:
  EntryMoments(Ensemble e, const MomentProfile& m) : ensemble_(e), m_{1.0, m.m1, m.m2, m.m3, m.m4} {
    // Off-diagonal pair {i<j}: E[X_ij^c1 X_ji^c2].
    for (int c1 = 0; c1 <= 2; ++c1) {
      for (int c2 = 0; c2 <= 2; ++c2) off_[c1][c2] = off_diagonal(c1, c2);
    }
  }

  cplx off(int c1, int c2) const { return off_[c1][c2]; }

  // E[(sqrt2 R - mu)^a (sqrt2 R - nu)^b], a, b in {0, 1}.
  double diag(int a, int b, double mu, double nu) const {
    const double s = M_SQRT2;
    if (a && b) return 2.0 * m_[2] - s * (mu + nu) * m_[1] + mu * nu;
    if (a) return s * m_[1] - mu;
    if (b) return s * m_[1] - nu;
    return 1.0;
  }

 private:
  double moment(int p) const {
    if (p > 4) throw std::logic_error("oracle: moment of order > 4 requested");
    return m_[p];
  }

  cplx off_diagonal(int c1, int c2) const {
    if (ensemble_ == Ensemble::real_symmetric) return moment(c1 + c2);
    // X_ij = R + iI, X_ji = R - iI with R, I independent copies.
    const cplx i(0.0, 1.0);
    cplx total = 0.0;
    for (int a = 0; a <= c1; ++a) {
      for (int b = 0; b <= c2; ++b) {
        const cplx unit = std::pow(i, a) * std::pow(-i, b);
        total += binom(c1, a) * binom(c2, b) * unit * moment(c1 + c2 - a - b) * moment(a + b);
      }
    }
    return total;
  }

  Ensemble ensemble_;
  std::array<double, 5> m_;
  std::array<std::array<cplx, 3>, 3> off_{};
};

// Signed expectation of the monomial selected by the permutation pair.
cplx pair_term(const Permutation& s, const Permutation& t, int n, const EntryMoments& em, double mu, double nu) {
  cplx prod = static_cast<double>(s.sign * t.sign);
  for (int i = 0; i < n; ++i) {
    const double d = em.diag(s.image[i] == i, t.image[i] == i, mu, nu);
    if (d == 0.0) return 0.0;
    prod *= d;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int c1 = (s.image[i] == j) + (t.image[i] == j);
      const int c2 = (s.image[j] == i) + (t.image[j] == i);
      if (c1 + c2 == 0) continue;
      const cplx e = em.off(c1, c2);
      if (e == 0.0) return 0.0;
      prod *= e;
    }
  }
  return prod;
}

void check_inputs(Ensemble e, const MomentProfile& m, int n, int max_n) {
  if (n < 1 || n > max_n) throw std::invalid_argument("oracle: n must lie in [1, " + std::to_string(max_n) + "]");
  m.validate(e);
}

double real_part_checked(cplx total, double mass) {
  if (std::fabs(total.imag()) > 1e-12 * std::max(1.0, mass)) {
    throw ConsistencyError("oracle: imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

}  // namespace

std::string_view to_string(Ensemble e) { return e == Ensemble::hermitian ? "hermitian" : "symmetric"; }

Ensemble ensemble_from_string(std::string_view s) {
  if (s == "hermitian") return Ensemble::hermitian;
  if (s == "symmetric" || s == "real_symmetric" || s == "real-symmetric") return Ensemble::real_symmetric;
  throw std::invalid_argument("unknown ensemble '" + std::string(s) + "'");
}

MomentProfile MomentProfile::gaussian(Ensemble e) {
  const double v = e == Ensemble::hermitian ? 0.5 : 1.0;
  return {0.0, v, 0.0, 3.0 * v * v};
}

MomentProfile MomentProfile::rademacher(Ensemble e) {
  const double v = e == Ensemble::hermitian ? 0.5 : 1.0;
  return {0.0, v, 0.0, v * v};
}

void MomentProfile::validate(Ensemble e) const {
  const double want = e == Ensemble::hermitian ? 0.5 : 1.0;
  if (m1 != 0.0) throw std::invalid_argument("MomentProfile: m1 must be 0");
  if (m2 != want) {
    throw std::invalid_argument("MomentProfile: m2 must be " + std::to_string(want) + " for the " +
                                std::string(to_string(e)) + " ensemble");
  }
  if (!(m4 >= m2 * m2)) throw std::invalid_argument("MomentProfile: m4 must be >= m2^2");
}

int egf_alpha(Ensemble e) { return e == Ensemble::hermitian ? 1 : 2; }

double egf_bstar(Ensemble e, const MomentProfile& m) {
  return e == Ensemble::hermitian ? m.m4 - 0.75 : 0.5 * (m.m4 - 3.0);
}

double oracle_f(Ensemble e, const MomentProfile& m, int n, double mu, double nu) {
  check_inputs(e, m, n, 6);
  const EntryMoments em(e, m);
  const std::vector<Permutation> perms = all_permutations(n);
  const std::size_t count = perms.size();
  std::vector<cplx> row(count);
  std::vector<double> row_mass(count);
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
  for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(count); ++a) {
    cplx acc = 0.0;
    double mass = 0.0;
    for (const Permutation& t : perms) {
      const cplx v = pair_term(perms[static_cast<std::size_t>(a)], t, n, em, mu, nu);
      acc += v;
      mass += std::abs(v);
    }
    row[static_cast<std::size_t>(a)] = acc;
    row_mass[static_cast<std::size_t>(a)] = mass;
  }
  cplx total = 0.0;
  double mass = 0.0;
  for (std::size_t a = 0; a < count; ++a) {
    total += row[a];
    mass += row_mass[a];
  }
  return real_part_checked(total, mass);
}

double oracle_mean(Ensemble e, const MomentProfile& m, int n, double lambda) {
  check_inputs(e, m, n, 7);
  const EntryMoments em(e, m);
  cplx total = 0.0;
  double mass = 0.0;
  for (const Permutation& s : all_permutations(n)) {
    cplx prod = static_cast<double>(s.sign);
    for (int i = 0; i < n && prod != 0.0; ++i) prod *= em.diag(s.image[i] == i, 0, lambda, 0.0);
    for (int i = 0; i < n && prod != 0.0; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int c1 = s.image[i] == j, c2 = s.image[j] == i;
        if (c1 + c2) prod *= em.off(c1, c2);
      }
    }
    total += prod;
    mass += std::abs(prod);
  }
  return real_part_checked(total, mass);
}

namespace reference {

double oracle_f_serial(Ensemble e, const MomentProfile& m, int n, double mu, double nu) {
  check_inputs(e, m, n, 6);
  const EntryMoments em(e, m);
  const std::vector<Permutation> perms = all_permutations(n);
  cplx total = 0.0;
  double mass = 0.0;
  for (const Permutation& s : perms) {
    for (const Permutation& t : perms) {
      const cplx v = pair_term(s, t, n, em, mu, nu);
      total += v;
      mass += std::abs(v);
    }
  }
  return real_part_checked(total, mass);
}

}  // namespace reference
}  // namespace rmt
