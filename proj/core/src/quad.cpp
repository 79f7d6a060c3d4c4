// SPDX-License-Identifier: Apache-2.0
#include "bilage/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace bilage::quad {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kContinuityTol = 1e-12;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
    static std::map<int, std::vector<std::pair<double, double>>> cache = [] {
        std::map<int, std::vector<std::pair<double, double>>> m;
        for (int n : {8, 16}) {
            std::vector<std::pair<double, double>> nw(n);
            for (int i = 1; i <= (n + 1) / 2; ++i) {
                double x = std::cos(kPi * (i - 0.25) / (n + 0.5));
                double dp = 0.0;
                for (int it = 0; it < 100; ++it) {
                    double p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k) {
                        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16) break;
                }
                double w = 2.0 / ((1.0 - x * x) * dp * dp);
                nw[i - 1] = {-x, w};
                nw[n - i] = {x, w};
            }
            m[n] = std::move(nw);
        }
        return m;
    }();
    auto it = cache.find(order);
    if (it == cache.end()) throw DomainError("gauss_legendre order not available");
    return it->second;
}

// ---------------------------------------------------------------------------
// ContourPath

ContourPath::ContourPath(std::vector<Segment> segments, bool closed)
    : segments_(std::move(segments)), closed_(closed) {}

ContourPath ContourPath::line(cplx a, cplx b) {
    ContourPath p;
    p.append({[a, b](double u) { return a + u * (b - a); },
              [a, b](double) { return b - a; }});
    return p;
}

ContourPath ContourPath::polyline(const std::vector<cplx>& points, bool closed) {
    ContourPath p;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        p.append(line(points[i], points[i + 1]).segments()[0]);
    if (closed) {
        p.append(line(points.back(), points.front()).segments()[0]);
        p.mark_closed();
    }
    return p;
}

ContourPath ContourPath::arc(cplx center, double radius, double phase0, double phase1) {
    ContourPath p;
    p.append({[=](double u) {
                  double ph = phase0 + u * (phase1 - phase0);
                  return center + radius * cplx(std::cos(ph), std::sin(ph));
              },
              [=](double u) {
                  double ph = phase0 + u * (phase1 - phase0);
                  return radius * (phase1 - phase0) * cplx(-std::sin(ph), std::cos(ph));
              }});
    return p;
}

ContourPath ContourPath::circle(cplx center, double radius) {
    ContourPath p = arc(center, radius, 0.0, 2.0 * kPi);
    p.mark_closed();
    return p;
}

void ContourPath::append(Segment seg) { segments_.push_back(std::move(seg)); }

void ContourPath::append(const ContourPath& other) {
    for (const auto& s : other.segments_) segments_.push_back(s);
}

void ContourPath::mark_closed() { closed_ = true; }

ContourPath ContourPath::reversed() const {
    ContourPath p;
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        Segment s = *it;
        p.append({[s](double u) { return s.point(1.0 - u); },
                  [s](double u) { return -s.velocity(1.0 - u); }});
    }
    p.closed_ = closed_;
    return p;
}

cplx ContourPath::start() const { return segments_.front().point(0.0); }
cplx ContourPath::end() const { return segments_.back().point(1.0); }

void ContourPath::validate() const {
    if (segments_.empty()) throw DomainError("empty contour");
    double scale = 0.0;
    for (const auto& s : segments_)
        scale = std::max({scale, std::abs(s.point(0.0)), std::abs(s.point(1.0))});
    scale = std::max(scale, 1.0);
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        if (std::abs(segments_[i].point(1.0) - segments_[i + 1].point(0.0)) >
            kContinuityTol * scale)
            throw DomainError("contour segments are not continuous");
    }
    if (closed_ && std::abs(end() - start()) > kContinuityTol * scale)
        throw DomainError("closed contour does not close");
    for (const auto& s : segments_)
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (std::abs(s.velocity(u)) == 0.0)
                throw DomainError("contour segment has vanishing velocity");
}

// ---------------------------------------------------------------------------
// Adaptive panels

namespace {

struct Panel {
    int seg;
    double u0, u1;
    cplx val;      // GL16
    double err;    // |GL16 - GL8|
    double absval; // GL16 of |f| |ds|
    int depth;
};

struct PanelEval {
    const std::function<cplx(cplx)>* f;
    const ContourPath* path;
    std::size_t* n_evals;

    Panel operator()(int seg, double u0, double u1, int depth) const {
        const auto& s = path->segments()[seg];
        const auto& g16 = gauss_legendre(16);
        const auto& g8 = gauss_legendre(8);
        double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
        cplx v16 = 0.0;
        double a16 = 0.0;
        for (auto [x, w] : g16) {
            double u = mid + half * x;
            cplx fv = (*f)(s.point(u));
            if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag()))
                throw NonFiniteError("integrand returned non-finite value");
            cplx contrib = fv * s.velocity(u);
            v16 += w * contrib;
            a16 += w * std::abs(contrib);
        }
        cplx v8 = 0.0;
        for (auto [x, w] : g8) {
            double u = mid + half * x;
            v8 += w * (*f)(s.point(u)) * s.velocity(u);
        }
        *n_evals += 24;
        return {seg, u0, u1, v16 * half, std::abs((v16 - v8) * half), a16 * half, depth};
    }
};

struct WorstFirst {
    bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

QuadOutcome run_adaptive(const std::function<cplx(cplx)>& f, const ContourPath& path,
                         double tol, const QuadOptions& opts, bool graded) {
    QuadOutcome out;
    PanelEval ev{&f, &path, &out.n_evals};
    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    double err_live = 0.0, err_dead = 0.0, abs_total = 0.0;
    cplx val_dead = 0.0;

    int nseg = int(path.segments().size());
    int m = std::max(1, opts.initial_panels_per_segment);
    for (int i = 0; i < nseg; ++i)
        for (int j = 0; j < m; ++j) {
            Panel p = ev(i, double(j) / m, double(j + 1) / m, 0);
            err_live += p.err;
            abs_total += p.absval;
            queue.push(p);
        }
    int panels = nseg * m;

    // refining below the roundoff floor of int |f| |ds| only burns panels
    auto target = [&] { return std::max(tol, 2e-15 * abs_total); };

    double best_err = 1e300;
    int stalled = 0;
    while (!queue.empty() && err_live + err_dead > target() && panels < opts.max_panels) {
        if (err_live + err_dead < 0.99 * best_err) {
            best_err = err_live + err_dead;
            stalled = 0;
        } else if (++stalled > 256) {
            break; // noise floor reached empirically
        }
        Panel p = queue.top();
        queue.pop();
        err_live -= p.err;
        double len = p.u1 - p.u0;
        if (p.depth >= opts.graded_depth || len < 1e-15 * std::abs(p.u1)) {
            val_dead += p.val;
            err_dead += p.err;
            continue;
        }
        abs_total -= p.absval;
        double split = p.u0 + 0.5 * len;
        if (graded) {
            // grade toward a global interval endpoint (ratio 1/4)
            if (p.seg == 0 && p.u0 == 0.0)
                split = p.u0 + 0.25 * len;
            else if (p.seg == nseg - 1 && p.u1 == 1.0)
                split = p.u1 - 0.25 * len;
        }
        Panel l = ev(p.seg, p.u0, split, p.depth + 1);
        Panel r = ev(p.seg, split, p.u1, p.depth + 1);
        err_live += l.err + r.err;
        abs_total += l.absval + r.absval;
        queue.push(l);
        queue.push(r);
        panels += 1;
    }
    out.value = val_dead;
    while (!queue.empty()) {
        out.value += queue.top().val;
        queue.pop();
    }
    out.abs_err_est = err_live + err_dead;
    out.converged = out.abs_err_est <= tol;
    return out;
}

} // namespace

QuadOutcome integrate_contour(const std::function<cplx(cplx)>& f,
                              const ContourPath& path, double tol,
                              const QuadOptions& opts) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    path.validate();
    return run_adaptive(f, path, tol, opts, /*graded=*/false);
}

QuadOutcome integrate_interval(const std::function<cplx(double)>& f,
                               double a, double b, double tol,
                               const QuadOptions& opts) {
    if (!(a < b)) throw DomainError("integrate_interval requires a < b");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    ContourPath path = ContourPath::line(cplx(a, 0.0), cplx(b, 0.0));
    auto g = [&f](cplx z) { return f(z.real()); };
    return run_adaptive(g, path, tol, opts, /*graded=*/true);
}

QuadOutcome integrate_vertical(const std::function<cplx(cplx)>& f,
                               const VerticalLineSpec& spec, double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (!(spec.initial_height > 0.0)) throw DomainError("truncation height must be positive");
    const double c = spec.abscissa;
    const double piece_tol = tol / 8.0;

    QuadOutcome total;
    auto add = [&](cplx lo, cplx hi) {
        QuadOutcome piece = integrate_contour(f, ContourPath::line(lo, hi), piece_tol,
                                              QuadOptions{.initial_panels_per_segment = 4});
        total.value += piece.value;
        total.abs_err_est += piece.abs_err_est;
        total.n_evals += piece.n_evals;
        return std::abs(piece.value);
    };

    double T = spec.initial_height;
    add(cplx(c, -T), cplx(c, T));
    double prev_band = -1.0;
    bool truncated_ok = false;
    for (int round = 0; round < spec.max_doublings; ++round) {
        double band = add(cplx(c, T), cplx(c, 2.0 * T)) + add(cplx(c, -2.0 * T), cplx(c, -T));
        double scale = std::max(std::abs(total.value), tol);
        if (band < (tol / 8.0) * scale || band < 1e-300) {
            double ratio = prev_band > 0.0 ? band / prev_band : 0.5;
            if (ratio > 0.95) ratio = 0.95;
            total.abs_err_est += band * ratio / (1.0 - ratio);
            truncated_ok = true;
            break;
        }
        if (prev_band >= 0.0 && band > prev_band && round >= 3)
            throw SlowDecayError("integrand bands grow along the vertical line");
        prev_band = band;
        T *= 2.0;
    }
    if (!truncated_ok)
        throw SlowDecayError("vertical-line bands failed to decay below tolerance by max height");
    total.converged = total.abs_err_est <= tol;
    return total;
}

int winding_number(const ContourPath& path, cplx point) {
    auto f = [point](cplx z) { return 1.0 / (z - point); };
    QuadOutcome q = integrate_contour(f, path, 1e-6);
    double w = (q.value / cplx(0.0, 2.0 * kPi)).real();
    return int(std::lround(w));
}

// ---------------------------------------------------------------------------
// CauchyTable

CauchyTable::CauchyTable(std::function<cplx(cplx)> f, ContourPath path, double rel_tol,
                         std::function<double(cplx)> clearance, double min_scale_floor,
                         int max_panels)
    : f_(std::move(f)),
      path_(std::move(path)),
      rel_tol_(rel_tol),
      clearance_(std::move(clearance)),
      floor_(min_scale_floor),
      max_panels_(max_panels) {
    build(1);
}

void CauchyTable::build(int extra_split) {
    nodes_.clear();
    const auto& g16 = gauss_legendre(16);
    std::size_t evals = 0;
    PanelEval ev{&f_, &path_, &evals};

    struct Item {
        Panel p;
        double arclen;
        double clear_mid;
    };
    auto measure = [&](Item& it) {
        const auto& s = path_.segments()[it.p.seg];
        double um = 0.5 * (it.p.u0 + it.p.u1);
        it.arclen = std::abs(s.velocity(um)) * (it.p.u1 - it.p.u0);
        it.clear_mid = clearance_ ? clearance_(s.point(um)) : 1e300;
    };

    std::vector<Item> work, sized, final_panels;
    int nseg = int(path_.segments().size());
    for (int i = 0; i < nseg; ++i)
        for (int j = 0; j < extra_split; ++j) {
            Item it{ev(i, double(j) / extra_split, double(j + 1) / extra_split, 0), 0, 0};
            measure(it);
            work.push_back(it);
        }

    // pass 1: cap arclength by local clearance so cauchy() stays accurate
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        double cap = std::max(floor_, cap_factor_ * it.clear_mid);
        if (it.arclen > cap && int(sized.size() + work.size()) < max_panels_ &&
            (it.p.u1 - it.p.u0) > 1e-14) {
            double mid = 0.5 * (it.p.u0 + it.p.u1);
            Item l{ev(it.p.seg, it.p.u0, mid, it.p.depth + 1), 0, 0};
            Item r{ev(it.p.seg, mid, it.p.u1, it.p.depth + 1), 0, 0};
            measure(l);
            measure(r);
            work.push_back(l);
            work.push_back(r);
        } else {
            sized.push_back(it);
        }
    }

    // pass 2: refine against the embedded-rule error of int |f| |ds|
    auto cmp = [](const Item& a, const Item& b) { return a.p.err < b.p.err; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
    double abs_total = 0.0, err_total = 0.0;
    for (auto& it : sized) {
        abs_total += it.p.absval;
        err_total += it.p.err;
        queue.push(it);
    }
    int panels = int(sized.size());
    while (!queue.empty() && err_total > rel_tol_ * std::max(abs_total, 1e-300) &&
           panels < max_panels_) {
        Item it = queue.top();
        queue.pop();
        if ((it.p.u1 - it.p.u0) < 1e-14 || it.p.depth > 60) {
            final_panels.push_back(it);
            continue;
        }
        err_total -= it.p.err;
        abs_total -= it.p.absval;
        double mid = 0.5 * (it.p.u0 + it.p.u1);
        Item l{ev(it.p.seg, it.p.u0, mid, it.p.depth + 1), 0, 0};
        Item r{ev(it.p.seg, mid, it.p.u1, it.p.depth + 1), 0, 0};
        err_total += l.p.err + r.p.err;
        abs_total += l.p.absval + r.p.absval;
        queue.push(l);
        queue.push(r);
        panels += 1;
    }
    while (!queue.empty()) {
        final_panels.push_back(queue.top());
        queue.pop();
    }

    for (const auto& it : final_panels) {
        const auto& s = path_.segments()[it.p.seg];
        double mid = 0.5 * (it.p.u0 + it.p.u1), half = 0.5 * (it.p.u1 - it.p.u0);
        for (auto [x, w] : g16) {
            double u = mid + half * x;
            cplx z = s.point(u);
            nodes_.push_back({z, w * half * s.velocity(u) * f_(z)});
        }
    }
}

cplx CauchyTable::integral() const {
    cplx sum = 0.0;
    for (const auto& n : nodes_) sum += n.wf;
    return sum;
}

cplx CauchyTable::cauchy(cplx t) const {
    cplx sum = 0.0;
    for (const auto& n : nodes_) sum += n.wf / (n.s - t);
    return sum;
}

CauchyTable CauchyTable::refined() const {
    CauchyTable fine;
    fine.f_ = f_;
    fine.path_ = path_;
    fine.rel_tol_ = rel_tol_ / 16.0;
    fine.clearance_ = clearance_;
    fine.floor_ = floor_ / 2.0;
    fine.cap_factor_ = cap_factor_ / 2.0;
    fine.max_panels_ = max_panels_;
    fine.build(2);
    return fine;
}

} // namespace bilage::quad
