#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "lnd/json_io.hpp"
#include "lnd/lnd.hpp"
#include "oracle.hpp"

namespace fixtures {

using namespace lnd;

inline std::string data_path(const std::string& name) { return std::string(LND_DATA_DIR) + "/" + name; }

inline Json load(const std::string& name) {
  std::ifstream in(data_path(name));
  return Json::parse(in);
}

inline Polynomial P(const std::string& s) { return parse_poly(s, ring_xyz()); }

inline Polynomial freudenburg_u() { return P("x*z - y^2"); }
inline Polynomial freudenburg_v() { return P("z*(x*z - y^2)^2 + 2*x^2*y*(x*z - y^2) + x^5"); }

struct Triangular {
  Derivation d;
  Polynomial g, f, h, r, v;
};

inline std::vector<Triangular> triangular() {
  std::vector<Triangular> out;
  for (const auto& e : load("triangular_fixtures.json")) {
    std::vector<std::string> im;
    for (const auto& s : e["derivation"]) im.push_back(s.get<std::string>());
    out.push_back({Derivation::parse(ring_xyz(), im), P(e["g"].get<std::string>()), P(e["f"].get<std::string>()), P(e["h"].get<std::string>()),
                   P(e["r"].get<std::string>()), P(e["v"].get<std::string>())});
  }
  return out;
}

// D(p) by the schoolbook rule sum_i D(x_i) * dp/dx_i on naive polynomials.
inline oracle::Naive naive_apply(const std::vector<oracle::Naive>& images, const oracle::Naive& p) {
  oracle::Naive r;
  for (std::size_t i = 0; i < images.size(); ++i) r = oracle::add(r, oracle::mul(images[i], oracle::diff(p, i)));
  return r;
}

inline std::vector<oracle::Naive> naive_images(const Derivation& d) {
  std::vector<oracle::Naive> out;
  for (const auto& im : d.images()) out.push_back(oracle::from(im));
  return out;
}

// 3x3 determinant expanded over permutations.
inline oracle::Naive naive_jacobian_image(const Polynomial& f, const Polynomial& g, std::size_t var) {
  auto F = oracle::from(f), G = oracle::from(g);
  oracle::Naive e;
  e[oracle::Exps{0, 0, 0}] = 1;
  // rows: grad f, grad g, unit vector of var
  std::vector<std::vector<oracle::Naive>> m(3, std::vector<oracle::Naive>(3));
  for (std::size_t j = 0; j < 3; ++j) {
    m[0][j] = oracle::diff(F, j);
    m[1][j] = oracle::diff(G, j);
    if (j == var) m[2][j] = e;
  }
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  oracle::Naive det;
  for (int p = 0; p < 6; ++p) {
    oracle::Naive t = oracle::mul(oracle::mul(m[0][perms[p][0]], m[1][perms[p][1]]), m[2][perms[p][2]]);
    det = oracle::add(det, t, p < 3 ? 1 : -1);
  }
  return det;
}

// Random reduced word: up to max_swaps swaps, triangular degrees <= 4 and
// coefficients with numerators and denominators bounded by 9. Over Q(x)
// the coefficients are a/b * x^k with k in {-1, 0, 1}.
inline DecompositionWord random_word(std::mt19937& rng, Field field, int max_swaps = 3, int max_deg = 4) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), swaps(0, max_swaps), xdeg(-1, 1);
  auto nonzero = [&] {
    int a = 0;
    while (a == 0) a = num(rng);
    return a;
  };
  auto coeff = [&](bool unit) -> RationalFunction {
    Rational q(unit ? nonzero() : num(rng), den(rng));
    q.canonicalize();
    if (field == Field::Q || is_zero(q)) return RationalFunction(q);
    int k = xdeg(rng);
    if (k < 0) return RationalFunction(UPoly(q), UPoly::monomial(1));
    return RationalFunction(UPoly::monomial(static_cast<std::size_t>(k), q));
  };
  DecompositionWord w{field, {}};
  int m = swaps(rng);
  for (int i = 0; i <= m; ++i) {
    bool interior = i > 0 && i < m;
    TriangularFactor t;
    t.u = coeff(true);
    t.c = coeff(false);
    t.v = coeff(true);
    int lo = interior ? 2 : 0;
    int deg = std::uniform_int_distribution<int>(lo, std::max(lo, max_deg))(rng);
    PlanePolynomial F(ring_qx_yz());
    for (int k = 0; k <= deg; ++k) {
      RationalFunction c = k == deg && deg > 0 ? coeff(true) : coeff(false);
      F += plane_y().pow(k) * c;
    }
    t.F = F;
    w.triangular.push_back(t);
  }
  return w;
}

// C-construction instance from coordinate partials: delta_i = d/d(order[i])
// and f_i a random polynomial of degree <= 3 killed by delta_i, ..., delta_m.
struct CInstance {
  std::vector<std::size_t> order;
  std::vector<Derivation> deltas;
  std::vector<Polynomial> fs;
};

inline Polynomial random_kernel_poly(std::mt19937& rng, const std::vector<std::size_t>& vars) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3);
  Polynomial p(ring_xyz());
  for (int k = 0; k < 3; ++k) {
    Polynomial t = Polynomial::constant(ring_xyz(), coef(rng));
    int budget = deg(rng);
    for (std::size_t v : vars) {
      int e = std::uniform_int_distribution<int>(0, budget)(rng);
      budget -= e;
      t = t * Polynomial::variable(ring_xyz(), v).pow(static_cast<unsigned>(e));
    }
    p += t;
  }
  if (p.is_zero()) p = Polynomial::constant(ring_xyz(), 1);
  return p;
}

inline CInstance random_c_instance(std::mt19937& rng, std::size_t m) {
  CInstance c{{0, 1, 2}, {}, {}};
  std::shuffle(c.order.begin(), c.order.end(), rng);
  for (std::size_t i = 0; i < m; ++i) {
    c.deltas.push_back(Derivation::partial(ring_xyz(), c.order[i]));
    std::vector<std::size_t> allowed;
    for (std::size_t v = 0; v < 3; ++v)
      if (std::find(c.order.begin() + static_cast<std::ptrdiff_t>(i), c.order.begin() + static_cast<std::ptrdiff_t>(m),
                    v) == c.order.begin() + static_cast<std::ptrdiff_t>(m))
        allowed.push_back(v);
    c.fs.push_back(random_kernel_poly(rng, allowed));
  }
  return c;
}

// The bound e for generator g, with deg along d/dv read off as the degree in v.
inline unsigned oracle_c_bound(const CInstance& c, std::size_t g) {
  auto degree_in = [](const oracle::Naive& p, std::size_t v) {
    int d = -1;
    for (const auto& [e, k] : p) d = std::max(d, e[v]);
    return d;
  };
  oracle::Naive acc = oracle::from(Polynomial::variable(ring_xyz(), g));
  int e = 1;
  for (std::size_t j = c.fs.size(); j-- > 0;) {
    int l = degree_in(acc, c.order[j]) + 1;
    e += l - 1;
    acc = oracle::mul(acc, oracle::power(oracle::from(c.fs[j]), l, 3));
  }
  return static_cast<unsigned>(e);
}

// Delta^e(g) by repeated schoolbook application.
inline bool oracle_kills(const CInstance& c, std::size_t g, unsigned e) {
  std::vector<oracle::Naive> images(3);
  for (std::size_t i = 0; i < c.fs.size(); ++i) images[c.order[i]] = oracle::add(images[c.order[i]], oracle::from(c.fs[i]));
  oracle::Naive cur = oracle::from(Polynomial::variable(ring_xyz(), g));
  for (unsigned k = 0; k < e && !cur.empty(); ++k) cur = naive_apply(images, cur);
  return cur.empty();
}

}  // namespace fixtures
