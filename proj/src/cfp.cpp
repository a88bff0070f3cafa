#include "nccf/cfp.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "nccf/errors.hpp"

namespace nccf {

CMat schur_matrix(const std::vector<CMat>& coeffs) {
    if (coeffs.empty()) return CMat(0, 0);
    const int q = static_cast<int>(coeffs[0].rows());
    for (const CMat& c : coeffs)
        if (c.rows() != q || c.cols() != coeffs[0].cols())
            throw ShapeMismatch("Toeplitz coefficients must share a common square shape");
    if (coeffs[0].cols() != q) throw ShapeMismatch("Toeplitz coefficients must be square");
    const int blocks = static_cast<int>(coeffs.size());
    CMat t = CMat::Zero(blocks * q, blocks * q);
    for (int i = 0; i < blocks; ++i)
        for (int j = 0; j <= i; ++j) t.block(i * q, j * q, q, q) = coeffs[i - j];
    return t;
}

namespace {

// ---------------------------------------------------------------------------
// Witness parametrizations for the ascent. Each restart owns a builder that
// maps a real parameter vector to a raw tuple; the objective re-projects the
// raw tuple into the domain before evaluating.
// ---------------------------------------------------------------------------

struct ShiftParam {
    const InitialSegment* seg;
    std::vector<ShiftEdge> edges;

    int dim() const { return 2 * static_cast<int>(edges.size()); }
    MatTuple build(const std::vector<double>& theta) const {
        std::vector<std::pair<ShiftEdge, Complex>> weights;
        weights.reserve(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e)
            weights.emplace_back(edges[e], Complex(theta[2 * e], theta[2 * e + 1]));
        return lambda_shift(*seg, weights);
    }
    int letter_of(int param_index) const { return edges[param_index / 2].letter - 1; }
};

struct GradedParam {
    int d = 0;
    std::vector<int> sizes;     // level dimensions of the grading
    std::vector<int> offsets;   // prefix sums

    int dim() const {
        int blocks = 0;
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i) blocks += sizes[i + 1] * sizes[i];
        return 2 * d * blocks;
    }
    MatTuple build(const std::vector<double>& theta) const {
        MatTuple x(d, offsets.back());
        std::size_t at = 0;
        for (int j = 0; j < d; ++j)
            for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
                for (int r = 0; r < sizes[i + 1]; ++r)
                    for (int c = 0; c < sizes[i]; ++c) {
                        x.mats[j](offsets[i + 1] + r, offsets[i] + c) =
                            Complex(theta[at], theta[at + 1]);
                        at += 2;
                    }
        return x;
    }
    int letter_of(int param_index) const { return param_index / (dim() / d); }
};

struct Parametrization {
    bool graded = false;
    ShiftParam shift;
    GradedParam block;

    int dim() const { return graded ? block.dim() : shift.dim(); }
    MatTuple build(const std::vector<double>& theta) const {
        return graded ? block.build(theta) : shift.build(theta);
    }
    int letter_of(int param_index) const {
        return graded ? block.letter_of(param_index) : shift.letter_of(param_index);
    }
};

MatTuple project_into(const DomainSpec& dom, const MatTuple& raw, double margin) {
    double r = scaling_radius(dom, raw);
    if (!std::isfinite(r)) return raw;
    return raw.scaled(r * (1.0 - margin));
}

struct Objective {
    const MatPoly* p;
    const DomainSpec* dom;
    const Parametrization* par;
    double margin;

    double value_at(const MatTuple& x) const { return op_norm(evaluate(*p, x)); }
    MatTuple point(const std::vector<double>& theta) const {
        return project_into(*dom, par->build(theta), margin);
    }
    double operator()(const std::vector<double>& theta) const { return value_at(point(theta)); }
};

struct RestartResult {
    double value = -1.0;
    MatTuple witness;
    int iterations = 0;
    int index = 0;
};

RestartResult ascend(const Objective& obj, std::vector<double> theta, int index,
                     const OptimizerConfig& cfg) {
    const std::vector<double> theta0 = theta;
    double fval = obj(theta);
    const int dim = static_cast<int>(theta.size());
    int iter = 0;
    // Shrinking probe steps: the projected objective has ridges where the
    // domain gauge switches branches, and a coarse probe stalls there.
    for (double h = cfg.fd_step; h >= 1e-7 * cfg.fd_step && dim > 0; h *= 1e-2) {
        bool phase_live = true;
        while (phase_live && iter < cfg.max_iters) {
            ++iter;
            std::vector<double> grad(dim, 0.0);
            double gnorm = 0.0;
            for (int i = 0; i < dim; ++i) {
                std::vector<double> tp = theta, tm = theta;
                tp[i] += h;
                tm[i] -= h;
                grad[i] = (obj(tp) - obj(tm)) / (2.0 * h);
                gnorm += grad[i] * grad[i];
            }
            gnorm = std::sqrt(gnorm);
            if (gnorm == 0.0) break;

            double alpha = 0.25;
            bool improved = false;
            double fnew = fval;
            std::vector<double> trial(dim);
            auto value_at_step = [&](double a) {
                for (int i = 0; i < dim; ++i) trial[i] = theta[i] + a * grad[i] / gnorm;
                return obj(trial);
            };
            for (int halvings = 0; halvings < 30; ++halvings, alpha *= 0.5) {
                double ftrial = value_at_step(alpha);
                if (ftrial > fnew) {
                    // grow the step while it keeps paying off
                    double best_alpha = alpha;
                    fnew = ftrial;
                    for (int growth = 0; growth < 12; ++growth) {
                        double wider = value_at_step(best_alpha * 2.0);
                        if (wider <= fnew) break;
                        best_alpha *= 2.0;
                        fnew = wider;
                    }
                    value_at_step(best_alpha);
                    theta = trial;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;

            // Rebalance move: rescale each letter's parameter slice to put all
            // coordinates at a common operator norm. Extremal tuples sit on
            // the distinguished boundary, so this jump often lands on the
            // ridge the gradient only zigzags towards. Kept only if better.
            {
                MatTuple raw = obj.par->build(theta);
                double gmax = 0.0;
                std::vector<double> norms(static_cast<std::size_t>(raw.d));
                for (int j = 0; j < raw.d; ++j) {
                    norms[static_cast<std::size_t>(j)] = op_norm(raw.mats[j]);
                    gmax = std::max(gmax, norms[static_cast<std::size_t>(j)]);
                }
                bool scalable = gmax > 0.0;
                for (double nj : norms) scalable = scalable && nj > 1e-14 * gmax;
                if (scalable) {
                    std::vector<double> balanced = theta;
                    for (int i = 0; i < dim; ++i)
                        balanced[i] *= gmax / norms[static_cast<std::size_t>(obj.par->letter_of(i))];
                    double fbal = obj(balanced);
                    // relative margin so ulp-level ties reject deterministically
                    if (fbal > fnew * (1.0 + 1e-12)) {
                        fnew = fbal;
                        theta = balanced;
                    }
                }
            }

            double rel = (fnew - fval) / std::max(fval, std::numeric_limits<double>::min());
            fval = fnew;
            if (rel < cfg.rel_tol) phase_live = false;
        }
        if (iter >= cfg.max_iters) break;
    }

    RestartResult res;
    res.index = index;
    res.iterations = iter;
    // Keep the best point visited, projected at the ascent margin and at the
    // boundary shell; the start point is included so the restart can never
    // fall below its own anchor.
    const std::vector<double>* candidates[] = {&theta, &theta0};
    for (const std::vector<double>* t : candidates) {
        for (double m : {cfg.margin, cfg.boundary_eps}) {
            MatTuple x = project_into(*obj.dom, obj.par->build(*t), m);
            double v = obj.value_at(x);
            if (v > res.value) {
                res.value = v;
                res.witness = std::move(x);
            }
        }
    }
    return res;
}

Parametrization make_parametrization(const InitialSegment& seg, bool want_graded,
                                     std::mt19937_64& rng, int n_max) {
    Parametrization par;
    if (!want_graded) {
        par.graded = false;
        par.shift.seg = &seg;
        par.shift.edges = shift_edges(seg);
        return par;
    }
    par.graded = true;
    par.block.d = seg.alphabet_size();
    const int levels = seg.max_length() + 1;
    int cap = n_max > 0 ? std::max(n_max, levels) : 2 * levels;
    cap = std::min(cap, 64);
    par.block.sizes.assign(levels, 1);
    std::uniform_int_distribution<int> pick(0, levels - 1);
    for (int extra = cap - levels; extra > 0; --extra) ++par.block.sizes[pick(rng)];
    par.block.offsets.assign(levels + 1, 0);
    for (int i = 0; i < levels; ++i)
        par.block.offsets[i + 1] = par.block.offsets[i] + par.block.sizes[i];
    return par;
}

bool is_ball(const InitialSegment& seg) {
    std::size_t count = 0, layer = 1;
    for (int j = 0; j <= seg.max_length(); ++j) {
        count += layer;
        layer *= static_cast<std::size_t>(seg.alphabet_size());
    }
    return seg.size() == count;
}

RestartResult run_restart(const MatPoly& p, const InitialSegment& seg, const DomainSpec& dom,
                          const OptimizerConfig& cfg, int index) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(index)));
    const bool ball = is_ball(seg);
    // Restart 0 anchors the all-ones shift; the rest alternate between random
    // shift weights and graded blocks (ball segments only).
    bool graded = ball && index > 0 && (index % 2 == 1);
    Parametrization par = make_parametrization(seg, graded, rng, cfg.n_max);
    std::vector<double> theta(static_cast<std::size_t>(par.dim()), 0.0);
    if (index == 0) {
        for (std::size_t i = 0; i + 1 < theta.size(); i += 2) theta[i] = 1.0;
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        for (double& t : theta) t = g(rng) / std::sqrt(2.0);
    }
    Objective obj{&p, &dom, &par, cfg.margin};
    RestartResult res = ascend(obj, std::move(theta), index, cfg);
    return res;
}

}  // namespace

NormCertificate nilpotent_norm(const MatPoly& p, const InitialSegment& seg,
                               const DomainSpec& dom, const OptimizerConfig& cfg) {
    if (p.alphabet_size() != seg.alphabet_size() || seg.alphabet_size() != dom.tuple_len())
        throw DimensionMismatch("polynomial, segment, and domain alphabets differ");
    for (const auto& [w, c] : p.terms())
        if (!seg.contains(w))
            throw UnsupportedSupport("coefficient at " + format_word(w) +
                                     " lies outside the segment");

    // The search runs on a scale-free copy of p: dividing by a power of two
    // is exact, so rescaled inputs walk bit-identical trajectories and the
    // certificate scales with the polynomial.
    double peak = 0.0;
    for (const auto& [w, c] : p.terms()) peak = std::max(peak, c.cwiseAbs().maxCoeff());
    const double unit = peak > 0.0 ? std::exp2(std::ceil(std::log2(peak))) : 1.0;
    const MatPoly phat = scale(Complex(1.0 / unit, 0.0), p);

    NormCertificate best;
    best.seed = cfg.seed;
    best.value = -1.0;

    // Shift candidate: the all-ones segment shift pushed near the boundary.
    {
        MatTuple s = lambda_shift_all_ones(seg);
        MatTuple witness = project_into(dom, s, cfg.boundary_eps);
        best.value = op_norm(evaluate(phat, witness));
        best.witness = witness;
        best.method = "shift";
    }

    // Multistart ascent over sampler parametrizations.
    std::vector<RestartResult> results(static_cast<std::size_t>(std::max(cfg.restarts, 0)));
    auto worker = [&](int index) { return run_restart(phat, seg, dom, cfg, index); };
    if (cfg.jobs > 1 && cfg.restarts > 1) {
        std::vector<std::future<RestartResult>> futs;
        futs.reserve(results.size());
        for (int r = 0; r < cfg.restarts; ++r)
            futs.push_back(std::async(std::launch::async, worker, r));
        for (int r = 0; r < cfg.restarts; ++r) results[static_cast<std::size_t>(r)] = futs[r].get();
    } else {
        for (int r = 0; r < cfg.restarts; ++r) results[static_cast<std::size_t>(r)] = worker(r);
    }
    // Deterministic merge: maximum value, ties to the lowest restart index.
    for (const RestartResult& res : results) {
        if (res.value > best.value) {
            best.value = res.value;
            best.witness = res.witness;
            best.method = "optimizer";
            best.iterations = res.iterations;
        }
    }

    // Polish: push the winning witness to the boundary_eps shell and keep the
    // rescale only if it improves.
    {
        MatTuple polished = project_into(dom, best.witness, cfg.boundary_eps);
        double v = op_norm(evaluate(phat, polished));
        if (v > best.value) {
            best.value = v;
            best.witness = polished;
        }
    }

    // Report at the original scale, re-evaluated against the witness.
    best.value = op_norm(evaluate(p, best.witness));
    best.residual = std::abs(best.value - op_norm(evaluate(p, best.witness)));
    return best;
}

FeasibilityReport feasibility(const MatPoly& p, const InitialSegment& seg, const DomainSpec& dom,
                              double bound, const OptimizerConfig& cfg) {
    if (bound <= 0.0) throw Error("feasibility bound must be positive");
    FeasibilityReport rep;
    rep.bound = bound;
    rep.certificate = nilpotent_norm(p, seg, dom, cfg);
    rep.verdict = rep.certificate.value > bound * (1.0 + cfg.feas_tol) ? Verdict::Infeasible
                                                                       : Verdict::NotRefuted;
    return rep;
}

CMat pencil_eval(const Pencil& l, const MatTuple& x) {
    if (static_cast<int>(l.coeffs.size()) != x.d)
        throw DimensionMismatch("pencil has " + std::to_string(l.coeffs.size()) +
                                " coefficients, point has " + std::to_string(x.d));
    CMat acc = CMat::Zero(l.k * x.n, l.k * x.n);
    for (int j = 0; j < x.d; ++j) acc += kron(l.coeffs[j], x.mats[j]);
    return acc;
}

CMat phi_transform(const Pencil& l, const MatTuple& x) {
    CMat y = pencil_eval(l, x);
    CMat m = 2.0 * CMat::Identity(y.rows(), y.cols()) - y;
    Eigen::JacobiSVD<CMat> svd(m);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= 1e-12 * std::max(smax, 1.0))
        throw SingularResolvent("2 - L(X) is numerically singular");
    // L(X) and (2 - L(X))^{-1} commute, so a single left solve suffices.
    return m.partialPivLu().solve(y);
}

double lmi_check(const Pencil& l, const MatTuple& x) {
    CMat y = pencil_eval(l, x);
    return min_eig_hermitian(2.0 * CMat::Identity(y.rows(), y.cols()) - y - y.adjoint());
}

double circled_lmi_sweep(const Pencil& l, const MatTuple& x, int grid) {
    CMat y = pencil_eval(l, x);
    CMat id = CMat::Identity(y.rows(), y.cols());
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        Complex phase = std::polar(1.0, 2.0 * M_PI * k / grid);
        worst = std::min(worst, min_eig_hermitian(2.0 * id - phase * y - std::conj(phase) * y.adjoint()));
    }
    return worst;
}

}  // namespace nccf
