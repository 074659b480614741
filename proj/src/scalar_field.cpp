#include "tenseg/scalar_field.hpp"

#include <algorithm>
#include <cmath>

namespace tenseg {

namespace {

// x^n by repeated multiplication; exact at x = 0 and cheap for small n.
double int_pow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

ScalarField::ScalarField(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const Term& t : terms_) {
    if (t.i < 0 || t.j < 0)
      throw ValidationError("polynomial term has a negative exponent");
    if (t.i + t.j > kMaxDegree)
      throw ValidationError("polynomial total degree exceeds " +
                            std::to_string(kMaxDegree));
    if (!std::isfinite(t.coeff))
      throw ValidationError("polynomial coefficient is not finite");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  // merge duplicates, drop zeros
  std::vector<Term> canon;
  canon.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!canon.empty() && canon.back().i == t.i && canon.back().j == t.j)
      canon.back().coeff += t.coeff;
    else
      canon.push_back(t);
  }
  std::erase_if(canon, [](const Term& t) { return t.coeff == 0.0; });
  terms_ = std::move(canon);
}

ScalarField ScalarField::constant(double c) {
  return ScalarField({{0, 0, c}});
}

ScalarField ScalarField::monomial(int i, int j, double c) {
  return ScalarField({{i, j, c}});
}

ScalarField ScalarField::paraboloid(Point2 center) {
  return ScalarField({{0, 0, center.x * center.x + center.y * center.y},
                      {1, 0, -2.0 * center.x},
                      {0, 1, -2.0 * center.y},
                      {2, 0, 1.0},
                      {0, 2, 1.0}});
}

double ScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

int ScalarField::total_degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

double ScalarField::evaluate(Point2 p) const {
  // Terms are sorted by (i, j): Horner over y within each x-power group,
  // then Horner over x across groups, with gap handling via int_pow.
  double acc = 0.0;     // outer Horner accumulator
  int prev_i = -1;      // x-power of the previous group (descending scan)
  std::size_t k = terms_.size();
  while (k > 0) {
    // group [g, k) shares the x-power terms_[k-1].i
    std::size_t g = k;
    const int xi = terms_[k - 1].i;
    while (g > 0 && terms_[g - 1].i == xi) --g;
    // inner Horner over descending j
    double gy = 0.0;
    int prev_j = -1;
    for (std::size_t t = k; t > g; --t) {
      const Term& term = terms_[t - 1];
      if (prev_j < 0)
        gy = term.coeff;
      else
        gy = gy * int_pow(p.y, prev_j - term.j) + term.coeff;
      prev_j = term.j;
    }
    if (prev_j > 0) gy *= int_pow(p.y, prev_j);
    if (prev_i < 0)
      acc = gy;
    else
      acc = acc * int_pow(p.x, prev_i - xi) + gy;
    prev_i = xi;
    k = g;
  }
  if (prev_i > 0) acc *= int_pow(p.x, prev_i);
  return prev_i < 0 ? 0.0 : acc;
}

ScalarField ScalarField::derivative_x() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_)
    if (t.i > 0) out.push_back({t.i - 1, t.j, t.coeff * t.i});
  return ScalarField(std::move(out));
}

ScalarField ScalarField::derivative_y() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_)
    if (t.j > 0) out.push_back({t.i, t.j - 1, t.coeff * t.j});
  return ScalarField(std::move(out));
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return ScalarField(std::move(out));
}

ScalarField ScalarField::operator-(const ScalarField& o) const {
  std::vector<Term> out = terms_;
  out.reserve(out.size() + o.terms_.size());
  for (const Term& t : o.terms_) out.push_back({t.i, t.j, -t.coeff});
  return ScalarField(std::move(out));
}

ScalarField ScalarField::operator*(const ScalarField& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : o.terms_)
      out.push_back({a.i + b.i, a.j + b.j, a.coeff * b.coeff});
  return ScalarField(std::move(out));
}

ScalarField ScalarField::scaled(double s) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff *= s;
  return ScalarField(std::move(out));
}

void ScalarField::collapse_y(double y, std::vector<double>& out) const {
  int deg_x = 0;
  for (const Term& t : terms_) deg_x = std::max(deg_x, t.i);
  out.assign(terms_.empty() ? 0 : deg_x + 1, 0.0);
  std::size_t k = terms_.size();
  while (k > 0) {
    std::size_t g = k;
    const int xi = terms_[k - 1].i;
    while (g > 0 && terms_[g - 1].i == xi) --g;
    double gy = 0.0;
    int prev_j = -1;
    for (std::size_t t = k; t > g; --t) {
      const Term& term = terms_[t - 1];
      if (prev_j < 0)
        gy = term.coeff;
      else
        gy = gy * int_pow(y, prev_j - term.j) + term.coeff;
      prev_j = term.j;
    }
    if (prev_j > 0) gy *= int_pow(y, prev_j);
    out[xi] = gy;
    k = g;
  }
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
  return {f.derivative_x(), f.derivative_y()};
}

OneForm field_form_at(const ScalarField& f, Point2 p) {
  return {f.derivative_x().evaluate(p), f.derivative_y().evaluate(p), 1.0};
}

double Hessian2::max_abs() const {
  return std::max({std::abs(xx), std::abs(xy), std::abs(yy)});
}

int morse_index(const Hessian2& h) {
  const double tol = 1e-9 * (1.0 + h.max_abs());
  const double d = h.det();
  if (std::abs(d) <= tol)
    throw DegenerateHessian("Hessian determinant below degeneracy threshold");
  if (d < 0.0) return 1;
  return h.trace() < 0.0 ? 2 : 0;
}

std::vector<CriticalPoint> find_critical_points(const ScalarField& f,
                                                const BBox& bbox,
                                                const SolverOptions& opts) {
  if (!bbox.valid()) throw ValidationError("degenerate bounding box");
  const ScalarField gx = f.derivative_x();
  const ScalarField gy = f.derivative_y();
  if (gx.is_zero() && gy.is_zero())
    throw ZeroGradientField("field has an identically zero gradient");

  const ScalarField hxx = gx.derivative_x();
  const ScalarField hxy = gx.derivative_y();
  const ScalarField hyy = gy.derivative_y();

  const double diam = bbox.diameter();
  const double step_tol = opts.step_tol * diam;
  const double escape = opts.escape_margin * diam;
  const double grad_bound = opts.grad_tol * (1.0 + f.max_abs_coeff());

  std::vector<Point2> roots;
  const int n = opts.seed_grid;
  for (int sy = 0; sy < n; ++sy) {
    for (int sx = 0; sx < n; ++sx) {
      Point2 p{bbox.xmin + (sx + 0.5) * bbox.width() / n,
               bbox.ymin + (sy + 0.5) * bbox.height() / n};
      bool converged = false;
      for (int it = 0; it < opts.max_iterations; ++it) {
        const double gxv = gx.evaluate(p);
        const double gyv = gy.evaluate(p);
        const double a = hxx.evaluate(p);
        const double b = hxy.evaluate(p);
        const double d = hyy.evaluate(p);
        const double det = a * d - b * b;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double step_x = (d * gxv - b * gyv) / det;
        const double step_y = (a * gyv - b * gxv) / det;
        p.x -= step_x;
        p.y -= step_y;
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) break;
        if (!bbox.contains(p, escape)) break;
        if (std::hypot(step_x, step_y) < step_tol) {
          converged = true;
          break;
        }
      }
      if (!converged) continue;
      if (!bbox.contains(p)) continue;
      if (std::hypot(gx.evaluate(p), gy.evaluate(p)) > grad_bound) continue;
      roots.push_back(p);
    }
  }

  // Multi-start produces duplicates: cluster by distance, keep the
  // representative with the smaller gradient norm.
  std::sort(roots.begin(), roots.end(), lex_less);
  const double merge_tol = opts.dedupe_tol * diam;
  std::vector<Point2> unique;
  for (const Point2& r : roots) {
    bool merged = false;
    for (Point2& u : unique) {
      if (distance(u, r) < merge_tol) {
        const double gu = std::hypot(gx.evaluate(u), gy.evaluate(u));
        const double gr = std::hypot(gx.evaluate(r), gy.evaluate(r));
        if (gr < gu) u = r;
        merged = true;
        break;
      }
    }
    if (!merged) unique.push_back(r);
  }
  std::sort(unique.begin(), unique.end(), lex_less);

  std::vector<CriticalPoint> out;
  out.reserve(unique.size());
  for (const Point2& p : unique) {
    const Hessian2 h{hxx.evaluate(p), hxy.evaluate(p), hyy.evaluate(p)};
    const double tol = opts.degeneracy_tol * (1.0 + h.max_abs());
    if (std::abs(h.det()) <= tol)
      throw NonMorseField("degenerate critical point near (" +
                          std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ")");
    const int index = h.det() < 0.0 ? 1 : (h.trace() < 0.0 ? 2 : 0);
    out.push_back({p, index, h.det(), index % 2 == 0 ? 1 : -1});
  }
  return out;
}

}  // namespace tenseg
