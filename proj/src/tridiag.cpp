#include "gfc/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

// Number of eigenvalues strictly below x (Sturm sequence sign count).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double pivmin, double x) {
  const int n = static_cast<int>(d.size());
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    if (std::fabs(q) <= pivmin) q = -pivmin;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// Tridiagonal LU with partial pivoting for (T - lambda I), then one
// solve per call. Factorization kept in banded arrays (u: main,
// v: first super, w: second super, flip: pivot flags).
struct ShiftedSolver {
  int n;
  std::vector<double> sub, u, v, w;
  std::vector<char> flip;

  ShiftedSolver(const std::vector<double>& d, const std::vector<double>& e, double lambda)
      : n(static_cast<int>(d.size())), sub(n, 0.0), u(n), v(n, 0.0), w(n, 0.0), flip(n, 0) {
    // forward elimination with row interchanges
    std::vector<double> a(n), b(n - 1 > 0 ? n - 1 : 0), c(n - 1 > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) a[i] = d[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) b[i] = e[i], c[i] = e[i];
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
      norm = std::max(norm, std::fabs(a[i]) + (i + 1 < n ? std::fabs(b[i]) : 0.0));
    const double tiny = std::max(kSafeMin, kEps * kEps * norm);
    for (int i = 0; i < n; ++i) {
      double diag = a[i];
      double upper1 = (i + 1 < n) ? b[i] : 0.0;
      double lower = (i + 1 < n) ? c[i] : 0.0;
      if (i + 1 < n && std::fabs(lower) > std::fabs(diag)) {
        // interchange rows i and i+1
        flip[i] = 1;
        u[i] = lower;
        v[i] = a[i + 1];
        w[i] = (i + 2 < n) ? b[i + 1] : 0.0;
        const double m = diag / lower;
        a[i + 1] = upper1 - m * a[i + 1];
        if (i + 2 < n) {
          // row i originally has no entry two to the right; after the
          // swap the eliminated row picks one up from w.
          b[i + 1] = -m * b[i + 1];
        }
        sub[i + 1] = m;
      } else {
        double piv = diag;
        if (std::fabs(piv) <= tiny) piv = (piv < 0.0 ? -tiny : tiny);
        u[i] = piv;
        v[i] = upper1;
        w[i] = 0.0;
        if (i + 1 < n) {
          const double m = lower / piv;
          a[i + 1] -= m * upper1;
          sub[i + 1] = m;
        }
      }
    }
    if (std::fabs(u[n - 1]) <= tiny) u[n - 1] = (u[n - 1] < 0.0 ? -tiny : tiny);
  }

  void solve(std::vector<double>& rhs) const {
    for (int i = 0; i + 1 < n; ++i) {
      if (flip[i]) std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= sub[i + 1] * rhs[i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = rhs[i];
      if (i + 1 < n) s -= v[i] * rhs[i + 1];
      if (i + 2 < n) s -= w[i] * rhs[i + 2];
      rhs[i] = s / u[i];
    }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& a) {
  double nrm = std::sqrt(dot(a, a));
  if (nrm == 0.0) throw std::runtime_error("inverse iteration produced a zero vector");
  for (double& x : a) x /= nrm;
}

}  // namespace

TridiagEigen tridiag_smallest(const std::vector<double>& d, const std::vector<double>& e, int k) {
  const int n = static_cast<int>(d.size());
  if (k < 1 || k > n) throw std::invalid_argument("tridiag_smallest: k out of range");
  if (static_cast<int>(e.size()) != n - 1)
    throw std::invalid_argument("tridiag_smallest: off-diagonal size");

  double emax2 = 1.0;
  for (double x : e) emax2 = std::max(emax2, x * x);
  const double pivmin = kSafeMin * emax2;

  // Gershgorin bounds
  double lb = d[0], ub = d[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i < n - 1 ? std::fabs(e[i]) : 0.0);
    lb = std::min(lb, d[i] - r);
    ub = std::max(ub, d[i] + r);
  }
  const double span = std::max(ub - lb, 1.0);
  lb -= kEps * span + pivmin;
  ub += kEps * span + pivmin;

  TridiagEigen out;
  out.values.resize(k);
  for (int j = 0; j < k; ++j) {
    // bisect for the (j+1)-th smallest eigenvalue
    double lo = lb, hi = ub;
    for (int it = 0; it < 128; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double tol = 2.0 * kEps * (std::fabs(lo) + std::fabs(hi)) + 2.0 * pivmin;
      if (hi - lo <= tol) break;
      if (sturm_count(d, e, pivmin, mid) > j) hi = mid; else lo = mid;
    }
    out.values[j] = 0.5 * (lo + hi);
  }

  // one-norm of T for the cluster perturbation scale
  double tnorm = 0.0;
  for (int i = 0; i < n; ++i)
    tnorm = std::max(tnorm, std::fabs(d[i]) + (i > 0 ? std::fabs(e[i - 1]) : 0.0) +
                                (i < n - 1 ? std::fabs(e[i]) : 0.0));
  const double eps3 = kEps * std::max(tnorm, 1.0);

  out.vectors.assign(k, std::vector<double>(n));
  double prev_shift = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < k; ++j) {
    // Clustered shifts are spread apart so the factorizations differ.
    double shift = out.values[j];
    if (shift - prev_shift < 10.0 * eps3) shift = prev_shift + 10.0 * eps3;
    prev_shift = shift;

    ShiftedSolver solver(d, e, shift);
    // deterministic asymmetric start vector
    std::vector<double>& vv = out.vectors[j];
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < n; ++i) {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      vv[i] = 1.0 + 0.5 * (static_cast<double>((s >> 33) & 0xffff) / 65536.0 - 0.5);
    }
    normalize(vv);
    for (int sweep = 0; sweep < 3; ++sweep) {
      solver.solve(vv);
      // Gram-Schmidt against all previously accepted vectors; for
      // separated eigenvalues the coefficients are round-off sized,
      // for clusters this picks a fresh direction in the eigenspace.
      for (int r = 0; r < j; ++r) {
        const double c = dot(vv, out.vectors[r]);
        for (int i = 0; i < n; ++i) vv[i] -= c * out.vectors[r][i];
      }
      normalize(vv);
    }

    // Rayleigh-quotient polish; the bisection value is kept only as a
    // fallback if the quotient is non-finite.
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = d[i] * vv[i];
      if (i > 0) t += e[i - 1] * vv[i - 1];
      if (i < n - 1) t += e[i] * vv[i + 1];
      num += vv[i] * t;
    }
    if (std::isfinite(num)) out.values[j] = num;
  }

  // polish can reorder degenerate pairs by round-off
  std::vector<int> order(k);
  for (int j = 0; j < k; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.values[a] < out.values[b]; });
  TridiagEigen sorted;
  sorted.values.resize(k);
  sorted.vectors.resize(k);
  for (int j = 0; j < k; ++j) {
    sorted.values[j] = out.values[order[j]];
    sorted.vectors[j] = std::move(out.vectors[order[j]]);
  }
  return sorted;
}

}  // namespace gfc
