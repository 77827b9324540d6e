#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the simulator's gate kernels.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qroute/graph.hpp"
#include "qroute/rng.hpp"

namespace qroute::ref {

using C = std::complex<double>;

/// Dense square matrix, row-major.
struct Dense {
  std::size_t n = 0;
  std::vector<C> a;

  explicit Dense(std::size_t dim) : n(dim), a(dim * dim, C(0.0, 0.0)) {}
  C& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  C operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  static Dense identity(std::size_t dim) {
    Dense m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Dense matmul(const Dense& x, const Dense& y) {
  Dense r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
  return r;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense r(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) r(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return r;
}

inline Dense mat2(C a, C b, C c, C d) {
  Dense m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline Dense rx2(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return mat2(c, C(0, -s), C(0, -s), c);
}
inline Dense ry2(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return mat2(c, -s, s, c);
}
inline Dense rz2(double t) { return mat2(std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2)); }
inline Dense h2() {
  const double r = 1.0 / std::sqrt(2.0);
  return mat2(r, r, r, -r);
}

/// Single-qubit operator u on qubit q of n; qubit 0 is the leftmost factor.
inline Dense embed(const Dense& u, int q, int n) {
  Dense r = Dense::identity(1);
  for (int k = 0; k < n; ++k) r = kron(r, k == q ? u : Dense::identity(2));
  return r;
}

/// |0><0|_c (x) I + |1><1|_c (x) X_t.
inline Dense cnot_dense(int c, int t, int n) {
  const Dense p0 = mat2(1, 0, 0, 0), p1 = mat2(0, 0, 0, 1), x = mat2(0, 1, 1, 0);
  Dense a = Dense::identity(1), b = Dense::identity(1);
  for (int k = 0; k < n; ++k) {
    a = kron(a, k == c ? p0 : Dense::identity(2));
    b = kron(b, k == c ? p1 : (k == t ? x : Dense::identity(2)));
  }
  for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += b.a[i];
  return a;
}

inline std::vector<C> apply_dense(const Dense& m, const std::vector<C>& v) {
  std::vector<C> r(v.size(), C(0.0, 0.0));
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline std::vector<C> zero_state(int n) {
  std::vector<C> v(std::size_t{1} << n, C(0.0, 0.0));
  v[0] = 1.0;
  return v;
}

/// Dense reference of the basic entangler: per layer RX/RY/RZ rotations then
/// the CNOT ring (single CNOT for two qubits, nothing for one).
inline std::vector<C> dense_entangler(int n, int layers, char axis, const std::vector<double>& params,
                                      std::vector<C> v) {
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      const double t = params[static_cast<std::size_t>(l * n + q)];
      const Dense u = axis == 'X' ? rx2(t) : axis == 'Y' ? ry2(t) : rz2(t);
      v = apply_dense(embed(u, q, n), v);
    }
    if (n == 2) {
      v = apply_dense(cnot_dense(0, 1, n), v);
    } else if (n > 2) {
      for (int q = 0; q < n; ++q) v = apply_dense(cnot_dense(q, (q + 1) % n, n), v);
    }
  }
  return v;
}

inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                  std::vector<double> x, std::size_t i, double h = 1e-5) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2 * h);
}

/// Connected random graph: a random spanning tree plus extra edges, integer
/// weights in [1, wmax].
inline WeightedGraph random_connected_graph(int n, double extra_p, int wmax, Rng& rng) {
  WeightedGraph g(n);
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    g.add_edge(u, v, static_cast<double>(rng.uniform_int(1, wmax)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j) && rng.uniform01() < extra_p) g.add_edge(i, j, static_cast<double>(rng.uniform_int(1, wmax)));
  return g;
}

}  // namespace qroute::ref
