#include "fieldapprox/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "fieldapprox/interpolator.hpp"

namespace fieldapprox {

namespace {

// per-coordinate composite rules; components with exponent below one get
// at least one grading level (integrand kinks at the cell vertices)
std::vector<Rule1D> coordinate_rules(const CovarianceModel& model, const QuadratureSpec& spec) {
    std::vector<double> astar = model.smoothness().per_coordinate(model.decomposition());
    std::vector<Rule1D> rules;
    rules.reserve(astar.size());
    for (double a : astar) {
        int level = std::max(spec.subdivision, a < 1.0 ? 1 : 0);
        rules.push_back(graded_rule_01(spec.order, level));
    }
    return rules;
}

double clamp_mse(double v, double scale) {
    double tol = 1e-10 * std::max(1.0, scale);
    if (v < -tol) throw std::runtime_error("pointwise MSE is negative: kernel is not PSD");
    return v < 0.0 ? 0.0 : v;
}

// state for evaluating the MSE at points of one cell
struct CellContext {
    int d = 0;
    size_t nv = 0;
    std::vector<double> lo, hi;
    std::vector<std::vector<double>> vertices;  // nv x d
    std::vector<double> gram;                   // nv x nv, r(t_v,t_u) or variogram(t_v-t_u)
    bool stationary = false;

    void init(const CovarianceModel& model, std::span<const double> lo_in, std::span<const double> hi_in) {
        d = static_cast<int>(lo_in.size());
        nv = static_cast<size_t>(1) << d;
        lo.assign(lo_in.begin(), lo_in.end());
        hi.assign(hi_in.begin(), hi_in.end());
        stationary = model.stationary_increments();
        vertices.assign(nv, std::vector<double>(static_cast<size_t>(d)));
        for (size_t mask = 0; mask < nv; ++mask)
            for (int m = 0; m < d; ++m)
                vertices[mask][static_cast<size_t>(m)] =
                    ((mask >> m) & 1u) ? hi[static_cast<size_t>(m)] : lo[static_cast<size_t>(m)];
        gram.assign(nv * nv, 0.0);
        std::vector<double> diff(static_cast<size_t>(d));
        for (size_t v = 0; v < nv; ++v)
            for (size_t u = 0; u <= v; ++u) {
                double g;
                if (stationary) {
                    for (int m = 0; m < d; ++m)
                        diff[static_cast<size_t>(m)] =
                            vertices[v][static_cast<size_t>(m)] - vertices[u][static_cast<size_t>(m)];
                    g = model.variogram(diff);
                } else {
                    g = model.covariance(vertices[v], vertices[u]);
                }
                gram[v * nv + u] = gram[u * nv + v] = g;
            }
    }

    // MSE at local coordinate s, with weights w = vertex_weights(s)
    double mse_at(const CovarianceModel& model, std::span<const double> s,
                  std::span<const double> w, std::vector<double>& t, std::vector<double>& diff) const {
        for (int m = 0; m < d; ++m)
            t[static_cast<size_t>(m)] = lo[static_cast<size_t>(m)] +
                                        (hi[static_cast<size_t>(m)] - lo[static_cast<size_t>(m)]) *
                                            s[static_cast<size_t>(m)];
        double cross = 0.0;
        double quad = 0.0;
        if (stationary) {
            // E_eta gamma(t - t_eta) - (1/2) E_{eta,xi} gamma(t_eta - t_xi)
            for (size_t v = 0; v < nv; ++v) {
                if (w[v] == 0.0) continue;
                for (int m = 0; m < d; ++m)
                    diff[static_cast<size_t>(m)] = t[static_cast<size_t>(m)] - vertices[v][static_cast<size_t>(m)];
                cross += w[v] * model.variogram(diff);
                double row = 0.0;
                for (size_t u = 0; u < nv; ++u) row += w[u] * gram[v * nv + u];
                quad += w[v] * row;
            }
            return clamp_mse(cross - 0.5 * quad, 1.0);
        }
        double rtt = model.covariance(t, t);
        for (size_t v = 0; v < nv; ++v) {
            if (w[v] == 0.0) continue;
            cross += w[v] * model.covariance(t, vertices[v]);
            double row = 0.0;
            for (size_t u = 0; u < nv; ++u) row += w[u] * gram[v * nv + u];
            quad += w[v] * row;
        }
        return clamp_mse(rtt - 2.0 * cross + quad, rtt);
    }
};

double cell_mean_mse(const CovarianceModel& model, const CellContext& ctx,
                     const std::vector<Rule1D>& rules) {
    const int d = ctx.d;
    std::vector<int> extents(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m)
        extents[static_cast<size_t>(m)] = static_cast<int>(rules[static_cast<size_t>(m)].nodes.size());
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> s(static_cast<size_t>(d)), t(static_cast<size_t>(d)), diff(static_cast<size_t>(d));
    double acc = 0.0;
    do {
        double wq = 1.0;
        for (int m = 0; m < d; ++m) {
            const Rule1D& r = rules[static_cast<size_t>(m)];
            int i = idx[static_cast<size_t>(m)];
            s[static_cast<size_t>(m)] = r.nodes[static_cast<size_t>(i)];
            wq *= r.weights[static_cast<size_t>(i)];
        }
        std::vector<double> w = vertex_weights(s);
        acc += wq * ctx.mse_at(model, s, w, t, diff);
    } while (next_multi_index(idx, extents));
    return acc;
}

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    size_t half = x.size() / 2;
    return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

// cache key for stationary-increment models: the cell diagonal determines
// the per-cell mean MSE exactly
using DiagonalCache = std::map<std::vector<double>, double>;

}  // namespace

double pointwise_mse(const CovarianceModel& model, const Design& design, std::span<const double> t) {
    CellLocation loc = locate_cell(design, t);
    const int d = design.dim();
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    design.cell_bounds(loc.cell, lo, hi);
    CellContext ctx;
    ctx.init(model, lo, hi);
    std::vector<double> w = vertex_weights(loc.local);
    std::vector<double> tt(static_cast<size_t>(d)), diff(static_cast<size_t>(d));
    return ctx.mse_at(model, loc.local, w, tt, diff);
}

double box_mse_mean(const CovarianceModel& model, std::span<const double> lo,
                    std::span<const double> hi, const std::vector<Rule1D>& rules) {
    if (lo.size() != hi.size() || static_cast<int>(lo.size()) != model.dim())
        throw std::invalid_argument("box_mse_mean: dimension mismatch");
    CellContext ctx;
    ctx.init(model, lo, hi);
    return cell_mean_mse(model, ctx, rules);
}

ErrorReport imse(const CovarianceModel& model, const Design& design, const QuadratureSpec& spec,
                 bool keep_cells, int threads) {
    if (model.dim() != design.dim()) throw std::invalid_argument("imse: model/design dimension mismatch");
    std::vector<Rule1D> rules = coordinate_rules(model, spec);
    std::vector<int> counts = design.cell_counts();
    const long long total = design.total_cells();
    const int d = design.dim();

    std::vector<double> contrib(static_cast<size_t>(total));
    auto worker = [&](long long first, long long last) {
        DiagonalCache cache;
        std::vector<int> idx(static_cast<size_t>(d), 0);
        // position the odometer at linear index `first` (row-major)
        long long rem = first;
        for (int m = d; m-- > 0;) {
            idx[static_cast<size_t>(m)] = static_cast<int>(rem % counts[static_cast<size_t>(m)]);
            rem /= counts[static_cast<size_t>(m)];
        }
        std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d)),
            diag(static_cast<size_t>(d));
        for (long long c = first; c < last; ++c) {
            design.cell_bounds(idx, lo, hi);
            double volume = 1.0;
            for (int m = 0; m < d; ++m) {
                diag[static_cast<size_t>(m)] = hi[static_cast<size_t>(m)] - lo[static_cast<size_t>(m)];
                volume *= diag[static_cast<size_t>(m)];
            }
            double mean;
            if (model.stationary_increments()) {
                auto it = cache.find(diag);
                if (it != cache.end()) {
                    mean = it->second;
                } else {
                    CellContext ctx;
                    ctx.init(model, lo, hi);
                    mean = cell_mean_mse(model, ctx, rules);
                    cache.emplace(diag, mean);
                }
            } else {
                CellContext ctx;
                ctx.init(model, lo, hi);
                mean = cell_mean_mse(model, ctx, rules);
            }
            contrib[static_cast<size_t>(c)] = mean * volume;
            next_multi_index(idx, counts);
        }
    };

    threads = std::max(1, threads);
    if (threads == 1 || total < 2 * threads) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        long long chunk = (total + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            long long first = t * chunk;
            long long last = std::min(total, first + chunk);
            if (first >= last) break;
            pool.emplace_back(worker, first, last);
        }
        for (auto& th : pool) th.join();
    }

    ErrorReport report;
    report.imse2 = pairwise_sum(contrib);
    report.n_actual = design.total_knots();
    report.quad_order = spec.order;
    report.n = design.allocation().n;
    if (keep_cells) report.cell_contributions = std::move(contrib);
    return report;
}

double sup_mse(const CovarianceModel& model, const Design& design, const QuadratureSpec& spec) {
    const int d = design.dim();
    const long long total = design.total_cells();
    int g = std::max(2, spec.scan_per_dim);
    // global cap on scan points
    const double cap = 2e6;
    while (g > 2 && static_cast<double>(total) * std::pow(static_cast<double>(g), d) > cap) --g;

    std::vector<int> counts = design.cell_counts();
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d)),
        diag(static_cast<size_t>(d)), s(static_cast<size_t>(d)), t(static_cast<size_t>(d)),
        diff(static_cast<size_t>(d));
    std::vector<int> sidx(static_cast<size_t>(d), 0);
    std::vector<int> sext(static_cast<size_t>(d), g);
    DiagonalCache cache;
    double best = 0.0;
    do {
        design.cell_bounds(idx, lo, hi);
        for (int m = 0; m < d; ++m)
            diag[static_cast<size_t>(m)] = hi[static_cast<size_t>(m)] - lo[static_cast<size_t>(m)];
        if (model.stationary_increments()) {
            auto it = cache.find(diag);
            if (it != cache.end()) {
                best = std::max(best, it->second);
                continue;
            }
        }
        CellContext ctx;
        ctx.init(model, lo, hi);
        double cell_max = 0.0;
        std::fill(sidx.begin(), sidx.end(), 0);
        do {
            for (int m = 0; m < d; ++m)
                s[static_cast<size_t>(m)] = (sidx[static_cast<size_t>(m)] + 1.0) / (g + 1.0);
            std::vector<double> w = vertex_weights(s);
            cell_max = std::max(cell_max, ctx.mse_at(model, s, w, t, diff));
        } while (next_multi_index(sidx, sext));
        if (model.stationary_increments()) cache.emplace(diag, cell_max);
        best = std::max(best, cell_max);
    } while (next_multi_index(idx, counts));
    return best;
}

McResult mc_imse(const CovarianceModel& model, const Design& design, int eval_points, int paths,
                 std::uint64_t seed) {
    if (eval_points < 1 || paths < 2) throw std::invalid_argument("mc_imse: need points and paths");
    const int d = design.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // enumerate all design knots (row-major over knot multi-indices)
    std::vector<int> kcounts(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) kcounts[static_cast<size_t>(m)] = design.cells(m) + 1;
    std::vector<std::vector<double>> pts;
    {
        std::vector<int> idx(static_cast<size_t>(d), 0);
        do {
            std::vector<double> p(static_cast<size_t>(d));
            for (int m = 0; m < d; ++m)
                p[static_cast<size_t>(m)] = design.knots(m)[static_cast<size_t>(idx[static_cast<size_t>(m)])];
            pts.push_back(std::move(p));
        } while (next_multi_index(idx, kcounts));
    }
    // knot multi-index -> row
    std::vector<long long> strides(static_cast<size_t>(d), 1);
    for (int m = d - 2; m >= 0; --m)
        strides[static_cast<size_t>(m)] =
            strides[static_cast<size_t>(m) + 1] * kcounts[static_cast<size_t>(m) + 1];

    // random evaluation points with their interpolation stencils
    struct Stencil {
        size_t row;                    // own row in the joint matrix
        std::vector<size_t> vertices;  // knot rows
        std::vector<double> weights;
    };
    std::vector<Stencil> stencils;
    for (int r = 0; r < eval_points; ++r) {
        std::vector<double> p(static_cast<size_t>(d));
        for (auto& x : p) x = unif(rng);
        CellLocation loc = locate_cell(design, p);
        std::vector<double> w = vertex_weights(loc.local);
        Stencil st;
        st.row = pts.size();
        for (size_t mask = 0; mask < w.size(); ++mask) {
            long long row = 0;
            for (int m = 0; m < d; ++m)
                row += (loc.cell[static_cast<size_t>(m)] + ((mask >> m) & 1)) * strides[static_cast<size_t>(m)];
            st.vertices.push_back(static_cast<size_t>(row));
            st.weights.push_back(w[mask]);
        }
        pts.push_back(std::move(p));
        stencils.push_back(std::move(st));
    }

    const size_t n = pts.size();
    Eigen::MatrixXd K(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= i; ++j) {
            double v = model.covariance(pts[i], pts[j]);
            K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }

    double trace = K.trace();
    McResult out;
    out.paths = paths;
    out.eval_points = eval_points;
    if (trace <= 0.0) return out;  // degenerate zero-variance field

    // jitter ladder: 1e-12 * trace/n, escalate by 10 up to 1e-6 * trace/n
    Eigen::LLT<Eigen::MatrixXd> llt;
    double base = 1e-12 * trace / static_cast<double>(n);
    bool ok = false;
    for (double jitter = base; jitter <= 1e-6 * trace / static_cast<double>(n) * (1.0 + 1e-12);
         jitter *= 10.0) {
        Eigen::MatrixXd Kj = K;
        Kj.diagonal().array() += jitter;
        llt.compute(Kj);
        if (llt.info() == Eigen::Success) {
            ok = true;
            break;
        }
    }
    if (!ok) throw std::runtime_error("mc_imse: covariance factorization failed after jitter escalation");
    Eigen::MatrixXd L = llt.matrixL();

    std::normal_distribution<double> gauss(0.0, 1.0);
    const int block = 256;
    Eigen::MatrixXd Z(n, block), X;
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> point_sum(static_cast<size_t>(eval_points), 0.0);
    int done = 0;
    while (done < paths) {
        int b = std::min(block, paths - done);
        Z.resize(static_cast<Eigen::Index>(n), b);
        for (int c = 0; c < b; ++c)
            for (size_t i = 0; i < n; ++i) Z(static_cast<Eigen::Index>(i), c) = gauss(rng);
        X = L * Z;
        for (int c = 0; c < b; ++c) {
            double acc = 0.0;
            for (size_t p = 0; p < stencils.size(); ++p) {
                const Stencil& st = stencils[p];
                double interp = 0.0;
                for (size_t v = 0; v < st.vertices.size(); ++v)
                    interp += st.weights[v] * X(static_cast<Eigen::Index>(st.vertices[v]), c);
                double err = X(static_cast<Eigen::Index>(st.row), c) - interp;
                acc += err * err;
                point_sum[p] += err * err;
            }
            double path_mean = acc / eval_points;
            sum += path_mean;
            sumsq += path_mean * path_mean;
        }
        done += b;
    }
    out.estimate = sum / paths;
    // two error sources: path sampling and the random evaluation points;
    // the point term also absorbs some path noise, which only widens the bar
    double var_path = (sumsq - sum * sum / paths) / (paths - 1.0);
    double pmean = sum / paths;
    double var_point = 0.0;
    for (double s : point_sum) {
        double m = s / paths;
        var_point += (m - pmean) * (m - pmean);
    }
    var_point = eval_points > 1 ? var_point / (eval_points - 1.0) : 0.0;
    out.std_error =
        std::sqrt(std::max(0.0, var_path) / paths + std::max(0.0, var_point) / eval_points);
    return out;
}

}  // namespace fieldapprox
