#include "rmt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace rmt {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15)
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

struct Cell {
  double a, b;
  Cplx value;
  double error;
};

Cell eval_cell(const std::function<Cplx(double)>& f, double a, double b) {
  double hl = 0.5 * (b - a), c = 0.5 * (a + b);
  Cplx fc = f(c);
  Cplx resk = kWgk[7] * fc;
  Cplx resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = hl * kXgk[j];
    Cplx f1 = f(c - x), f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  Cell cell;
  cell.a = a;
  cell.b = b;
  cell.value = resk * hl;
  cell.error = std::abs(resk - resg) * hl;
  return cell;
}

}  // namespace

QuadResult integrate_gk(const std::function<Cplx(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  auto cmp = [](const Cell& x, const Cell& y) { return x.error < y.error; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
  // presplit so localized features cannot hide from the first error estimate
  int presplit = std::min(16, std::max(4, max_intervals / 8));
  Cplx total(0.0);
  double err = 0.0;
  for (int i = 0; i < presplit; ++i) {
    double ca = a + (b - a) * i / presplit, cb = a + (b - a) * (i + 1) / presplit;
    Cell cell = eval_cell(f, ca, cb);
    out.evals += 15;
    total += cell.value;
    err += cell.error;
    heap.push(cell);
  }
  int cells = presplit;
  while (cells < max_intervals) {
    double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= target) break;
    Cell top = heap.top();
    heap.pop();
    double mid = 0.5 * (top.a + top.b);
    if (mid == top.a || mid == top.b) break;  // machine-precision interval
    Cell l = eval_cell(f, top.a, mid), r = eval_cell(f, mid, top.b);
    out.evals += 30;
    total += l.value + r.value - top.value;
    err += l.error + r.error - top.error;
    heap.push(l);
    heap.push(r);
    ++cells;
  }
  out.value = total;
  out.error = err;
  out.converged = err <= std::max(abs_tol, rel_tol * std::abs(total)) * 1.001 + 1e-300;
  return out;
}

QuadResult integrate_oscillatory_tail(const std::function<Cplx(double)>& f, double a,
                                      double omega, int half_periods, double cell_tol) {
  if (omega <= 0) throw std::invalid_argument("oscillatory tail: omega must be positive");
  double h = M_PI / omega;
  std::vector<Cplx> partial;
  partial.reserve(half_periods);
  Cplx acc(0.0);
  QuadResult out;
  for (int j = 0; j < half_periods; ++j) {
    auto cell = integrate_gk(f, a + j * h, a + (j + 1) * h, cell_tol, cell_tol, 200);
    out.evals += cell.evals;
    acc += cell.value;
    partial.push_back(acc);
  }
  // repeated averaging of the partial-sum sequence
  std::vector<Cplx> row = partial;
  Cplx prev = row.back();
  int depth = std::min<int>(half_periods - 1, 24);
  for (int d = 0; d < depth; ++d) {
    for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  out.value = row.front();
  out.error = std::abs(out.value - prev) * 0.1 + 1e-15;
  // refine the error estimate with one fewer averaging level
  if (row.size() >= 2) out.error = std::abs(row[0] - row[1]);
  out.converged = true;
  return out;
}

double fp_monomial_0w(double alpha, double w) {
  if (std::abs(alpha + 1.0) < 1e-12) return std::log(w);
  return std::pow(w, alpha + 1.0) / (alpha + 1.0);
}

std::vector<Cplx> laurent_coeffs(const std::function<Cplx(Cplx)>& f, double rho,
                                 int pole_order, int n_terms, int n_points) {
  std::vector<Cplx> vals(n_points);
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * M_PI * i / n_points;
    vals[i] = f(Cplx(rho * std::cos(th), rho * std::sin(th)));
  }
  std::vector<Cplx> out(n_terms);
  for (int t = 0; t < n_terms; ++t) {
    int j = t - pole_order;  // coefficient of z^j
    Cplx acc(0.0);
    for (int i = 0; i < n_points; ++i) {
      double th = 2.0 * M_PI * i / n_points;
      acc += vals[i] * std::exp(Cplx(0.0, -j * th));
    }
    out[t] = acc / (static_cast<double>(n_points) * std::pow(rho, j));
  }
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadResult integrate_arc(const std::function<Cplx(Cplx)>& f, double rho, double t0, double t1,
                         double abs_tol, double rel_tol) {
  auto g = [&](double th) {
    Cplx z(rho * std::cos(th), rho * std::sin(th));
    Cplx dz = Cplx(0.0, 1.0) * z;
    return f(z) * dz;
  };
  return integrate_gk(g, t0, t1, abs_tol, rel_tol);
}

}  // namespace rmt
