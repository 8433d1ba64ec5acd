#include "rct/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "rct/errors.hpp"

namespace rct {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const double value = resk * h;
  const double err = std::fabs((resk - resg) * h);
  return {a, b, value, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  if (!(b > a)) return {0.0, 0.0, true};
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  double total = s0.value, toterr = s0.err;
  heap.push(s0);
  int n = 1;
  auto tol = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
  while (toterr > tol() && n < opt.max_intervals) {
    Segment top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b)) {  // interval exhausted at fp resolution
      toterr -= top.err;
      continue;
    }
    Segment l = gk15(f, top.a, mid);
    Segment r = gk15(f, mid, top.b);
    total += l.value + r.value - top.value;
    toterr += l.err + r.err - top.err;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  return {total, toterr, toterr <= tol() * 1.0000001 || toterr <= opt.abs_tol};
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt) {
  auto g = [&f, a](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    const double jac = 1.0 / (om * om);
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(g, 0.0, 1.0 - 1e-14, opt);
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const QuadOptions& opt) {
  QuadResult r = integrate(f, a, b, opt);
  if (!r.converged)
    throw oracle_error("quadrature did not converge; best estimate " +
                       std::to_string(r.value) + " +/- " +
                       std::to_string(r.abserr));
  return r.value;
}

double integrate_to_inf_or_throw(const std::function<double(double)>& f,
                                 double a, const QuadOptions& opt) {
  QuadResult r = integrate_to_inf(f, a, opt);
  if (!r.converged)
    throw oracle_error("quadrature did not converge; best estimate " +
                       std::to_string(r.value) + " +/- " +
                       std::to_string(r.abserr));
  return r.value;
}

}  // namespace rct
