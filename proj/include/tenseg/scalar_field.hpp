#pragma once

#include <utility>
#include <vector>

#include "tenseg/errors.hpp"
#include "tenseg/forms.hpp"
#include "tenseg/geometry.hpp"

namespace tenseg {

/// Sparse bivariate polynomial with real coefficients.
///
/// Canonical form: terms sorted by (i, j), duplicate exponent pairs merged,
/// zero coefficients dropped, total degree capped at kMaxDegree.
class ScalarField {
 public:
  struct Term {
    int i = 0;  // exponent of x
    int j = 0;  // exponent of y
    double coeff = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr int kMaxDegree = 64;

  ScalarField() = default;
  explicit ScalarField(std::vector<Term> terms);

  static ScalarField constant(double c);
  static ScalarField monomial(int i, int j, double c);
  /// (x - cx)^2 + (y - cy)^2
  static ScalarField paraboloid(Point2 center);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double max_abs_coeff() const;
  int total_degree() const;

  double evaluate(Point2 p) const;

  ScalarField derivative_x() const;
  ScalarField derivative_y() const;

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator*(const ScalarField& o) const;
  ScalarField scaled(double s) const;

  /// Dense coefficients in x after substituting y, for fast row sweeps:
  /// out[i] = sum_j coeff(i,j) * y^j.  out is resized to x-degree + 1.
  void collapse_y(double y, std::vector<double>& out) const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::vector<Term> terms_;
};

/// (df/dx, df/dy) as polynomial fields; exact on coefficients.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);

/// dF at a point: (df/dx(p), df/dy(p), 1).
OneForm field_form_at(const ScalarField& f, Point2 p);

/// Symmetric 2x2 Hessian.
struct Hessian2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  double max_abs() const;
};

/// Number of negative eigenvalues (0 minimum, 1 saddle, 2 maximum).
/// Throws DegenerateHessian when |det| falls below the scale-aware
/// degeneracy threshold.
int morse_index(const Hessian2& h);

struct CriticalPoint {
  Point2 location;
  int morse_index = 0;
  double hessian_det = 0.0;
  int sign = 1;  // (-1)^morse_index
};

struct SolverOptions {
  int seed_grid = 64;           // Newton multi-start seeds per axis
  int max_iterations = 60;      // Newton iterations per seed
  double step_tol = 1e-13;      // convergence, times bbox diameter
  double dedupe_tol = 1e-8;     // root identification, times bbox diameter
  double grad_tol = 1e-9;       // acceptance, times (1 + max |coeff|)
  double degeneracy_tol = 1e-9; // Morse check, times (1 + max |H entry|)
  double escape_margin = 0.1;   // seed discard, times bbox diameter
};

/// All nondegenerate gradient zeros inside bbox, classified by Morse index,
/// in lexicographic (x, y) order.  Roots are located by Newton's method from
/// a uniform seed grid; anything the seeds miss is missed, and anything
/// outside bbox is the caller's business.
///
/// Throws ZeroGradientField for constant fields and NonMorseField when a
/// located zero fails the Morse condition.
std::vector<CriticalPoint> find_critical_points(const ScalarField& f,
                                                const BBox& bbox,
                                                const SolverOptions& opts = {});

}  // namespace tenseg
