#include "tl_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsu2::testing {

TLOracle::TLOracle(std::int64_t r) : r_(r) {
  if (r < 3) throw std::invalid_argument("TLOracle: r >= 3 required");
  d_ = 2.0 * std::cos(std::numbers::pi / static_cast<double>(r));
  jw_cache_.push_back(identity(0));
  jw_cache_.push_back(identity(1));
}

double TLOracle::quantum_int(std::int64_t n) const {
  return std::sin(static_cast<double>(n) * std::numbers::pi / static_cast<double>(r_)) /
         std::sin(std::numbers::pi / static_cast<double>(r_));
}

TLOracle::Element TLOracle::identity(int n) const {
  Element e;
  e.dom = e.cod = n;
  Pairing p(2 * n);
  for (int i = 0; i < n; ++i) {
    p[i] = n + i;
    p[n + i] = i;
  }
  e.terms[p] = 1.0;
  return e;
}

TLOracle::Element TLOracle::tl_generator(int n, int i) const {
  Element e;
  e.dom = e.cod = n;
  Pairing p(2 * n);
  for (int j = 0; j < n; ++j) {
    p[j] = n + j;
    p[n + j] = j;
  }
  p[i] = i + 1;
  p[i + 1] = i;
  p[n + i] = n + i + 1;
  p[n + i + 1] = n + i;
  e.terms[p] = 1.0;
  return e;
}

TLOracle::Element TLOracle::compose(const Element& after, const Element& before) const {
  if (before.cod != after.dom) throw std::logic_error("TLOracle::compose: shape mismatch");
  const int m = before.dom, n = before.cod, p = after.cod;
  Element out;
  out.dom = m;
  out.cod = p;

  for (const auto& [pa, ca] : before.terms) {
    for (const auto& [pb, cb] : after.terms) {
      // walk the glued diagram: boundary points are m bottoms and p tops;
      // middle points 0..n-1 carry one arc from each factor
      Pairing result(m + p, -1);
      std::vector<char> mid_seen(static_cast<std::size_t>(n), 0);

      auto walk = [&](int side, int point) {
        // side 0: in `before` index space; side 1: in `after` index space
        while (true) {
          int partner = side == 0 ? pa[point] : pb[point];
          if (side == 0) {
            if (partner < m) return std::pair<int, int>{0, partner};  // bottom boundary
            int mid = partner - m;
            mid_seen[static_cast<std::size_t>(mid)] = 1;
            side = 1;
            point = mid;
          } else {
            if (partner >= n) return std::pair<int, int>{1, partner - n};  // top boundary
            mid_seen[static_cast<std::size_t>(partner)] = 1;
            side = 0;
            point = m + partner;
          }
        }
      };

      std::vector<char> done(static_cast<std::size_t>(m + p), 0);
      for (int b = 0; b < m; ++b) {
        if (done[static_cast<std::size_t>(b)]) continue;
        auto [eside, epoint] = walk(0, b);
        int endpoint = eside == 0 ? epoint : m + epoint;
        result[b] = endpoint;
        result[endpoint] = b;
        done[static_cast<std::size_t>(b)] = 1;
        done[static_cast<std::size_t>(endpoint)] = 1;
      }
      for (int t = 0; t < p; ++t) {
        if (done[static_cast<std::size_t>(m + t)]) continue;
        auto [eside, epoint] = walk(1, n + t);
        (void)eside;
        int endpoint = m + epoint;
        result[m + t] = endpoint;
        result[endpoint] = m + t;
        done[static_cast<std::size_t>(m + t)] = 1;
        done[static_cast<std::size_t>(endpoint)] = 1;
      }

      // leftover middle points organize into closed loops; alternate between
      // after's bottom arcs and before's top arcs until the cycle closes
      int loops = 0;
      for (int j = 0; j < n; ++j) {
        if (mid_seen[static_cast<std::size_t>(j)]) continue;
        ++loops;
        int side = 1, point = j;
        while (!mid_seen[static_cast<std::size_t>(point)]) {
          mid_seen[static_cast<std::size_t>(point)] = 1;
          point = side == 1 ? pb[point] : pa[m + point] - m;
          side ^= 1;
        }
      }

      double coeff = ca * cb * std::pow(d_, loops);
      out.terms[result] += coeff;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (std::abs(it->second) < 1e-300) it = out.terms.erase(it);
    else ++it;
  }
  return out;
}

TLOracle::Element TLOracle::tensor(const Element& left, const Element& right) const {
  Element out;
  out.dom = left.dom + right.dom;
  out.cod = left.cod + right.cod;
  auto remap_left = [&](int i) {
    return i < left.dom ? i : out.dom + (i - left.dom);
  };
  auto remap_right = [&](int i) {
    return i < right.dom ? left.dom + i : out.dom + left.cod + (i - right.dom);
  };
  for (const auto& [pl, cl] : left.terms)
    for (const auto& [pr, cr] : right.terms) {
      Pairing p(static_cast<std::size_t>(out.dom + out.cod), -1);
      for (int i = 0; i < left.dom + left.cod; ++i) p[remap_left(i)] = remap_left(pl[i]);
      for (int i = 0; i < right.dom + right.cod; ++i) p[remap_right(i)] = remap_right(pr[i]);
      out.terms[p] += cl * cr;
    }
  return out;
}

TLOracle::Element TLOracle::mirror(const Element& e) const {
  Element out;
  out.dom = e.cod;
  out.cod = e.dom;
  auto remap = [&](int i) { return i < e.dom ? out.dom + i : i - e.dom; };
  for (const auto& [p, c] : e.terms) {
    Pairing q(p.size(), -1);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) q[remap(i)] = remap(p[i]);
    out.terms[q] += c;
  }
  return out;
}

const TLOracle::Element& TLOracle::jones_wenzl(int n) {
  if (n >= r_ - 1)
    throw std::invalid_argument("TLOracle: Jones-Wenzl projector undefined at this root");
  while (static_cast<int>(jw_cache_.size()) <= n) {
    int m = static_cast<int>(jw_cache_.size());  // building f_m from f_{m-1}
    Element fm1 = tensor(jw_cache_[static_cast<std::size_t>(m - 1)], identity(1));
    Element mid = compose(fm1, compose(tl_generator(m, m - 2), fm1));
    double coeff = quantum_int(m - 1) / quantum_int(m);
    Element fm = fm1;
    for (const auto& [p, c] : mid.terms) fm.terms[p] -= coeff * c;
    for (auto it = fm.terms.begin(); it != fm.terms.end();) {
      if (std::abs(it->second) < 1e-300) it = fm.terms.erase(it);
      else ++it;
    }
    jw_cache_.push_back(std::move(fm));
  }
  return jw_cache_[static_cast<std::size_t>(n)];
}

TLOracle::Element TLOracle::birth(int x, int y, int z) {
  Element e;
  e.dom = 0;
  e.cod = x + y + z;
  Pairing p(static_cast<std::size_t>(e.cod), -1);
  const int mxy = (x + y - z) / 2, myz = (y + z - x) / 2, mxz = (x + z - y) / 2;
  for (int j = 0; j < mxy; ++j) {
    p[x - 1 - j] = x + j;
    p[x + j] = x - 1 - j;
  }
  for (int j = 0; j < myz; ++j) {
    p[x + y - 1 - j] = x + y + j;
    p[x + y + j] = x + y - 1 - j;
  }
  for (int i = 0; i < mxz; ++i) {
    p[i] = x + y + z - 1 - i;
    p[x + y + z - 1 - i] = i;
  }
  e.terms[p] = 1.0;
  return e;
}

TLOracle::Element TLOracle::vertex_split(int c, int f, int b) {
  Element e;
  e.dom = c;
  e.cod = f + b;
  Pairing p(static_cast<std::size_t>(c + f + b), -1);
  const int x = (c + f - b) / 2, y = (f + b - c) / 2, z = (c + b - f) / 2;
  for (int i = 0; i < x; ++i) {
    p[i] = c + i;
    p[c + i] = i;
  }
  for (int j = 0; j < y; ++j) {
    p[c + x + j] = c + f + (y - 1 - j);
    p[c + f + (y - 1 - j)] = c + x + j;
  }
  for (int i = 0; i < z; ++i) {
    p[x + i] = c + f + y + i;
    p[c + f + y + i] = x + i;
  }
  e.terms[p] = 1.0;
  return e;
}

TLOracle::Element TLOracle::vertex_merge(int dd, int ff, int aa) {
  Element e;
  e.dom = dd + ff;
  e.cod = aa;
  Pairing p(static_cast<std::size_t>(dd + ff + aa), -1);
  const int y = (dd + ff - aa) / 2;
  const int dthrough = dd - y, fthrough = ff - y;
  for (int j = 0; j < y; ++j) {
    p[dd - 1 - j] = dd + j;
    p[dd + j] = dd - 1 - j;
  }
  for (int i = 0; i < dthrough; ++i) {
    p[i] = dd + ff + i;
    p[dd + ff + i] = i;
  }
  for (int i = 0; i < fthrough; ++i) {
    p[dd + y + i] = dd + ff + dthrough + i;
    p[dd + ff + dthrough + i] = dd + y + i;
  }
  e.terms[p] = 1.0;
  return e;
}

double TLOracle::closed_value(const Element& e) const {
  if (e.dom != 0 || e.cod != 0) throw std::logic_error("TLOracle: network not closed");
  double v = 0.0;
  for (const auto& [p, c] : e.terms) v += c;
  return v;
}

double TLOracle::theta(std::int64_t a, std::int64_t b, std::int64_t c) {
  auto ai = static_cast<int>(a), bi = static_cast<int>(b), ci = static_cast<int>(c);
  Element projected =
      compose(tensor(tensor(jones_wenzl(ai), jones_wenzl(bi)), jones_wenzl(ci)), birth(ai, bi, ci));
  return closed_value(compose(mirror(birth(ai, bi, ci)), projected));
}

double TLOracle::tet(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                     std::int64_t e, std::int64_t f) {
  auto ai = static_cast<int>(a), bi = static_cast<int>(b), ci = static_cast<int>(c),
       di = static_cast<int>(d), ei = static_cast<int>(e), fi = static_cast<int>(f);
  // scan order: birth (e,d,c); split c -> (f,b); merge (d,f) -> a; death (e,a,b)
  Element stage = compose(
      tensor(tensor(jones_wenzl(ei), jones_wenzl(di)), jones_wenzl(ci)), birth(ei, di, ci));
  Element split = compose(tensor(jones_wenzl(fi), jones_wenzl(bi)), vertex_split(ci, fi, bi));
  stage = compose(tensor(tensor(identity(ei), identity(di)), split), stage);
  Element merge = compose(jones_wenzl(ai), vertex_merge(di, fi, ai));
  stage = compose(tensor(tensor(identity(ei), merge), identity(bi)), stage);
  return closed_value(compose(mirror(birth(ei, ai, bi)), stage));
}

}  // namespace qsu2::testing
