#include "secsym/sections.hpp"

#include "secsym/parallel.hpp"
#include "secsym/random.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace secsym {

PhaseSection PhaseSection::zero(int m, std::size_t nodes) {
    PhaseSection s;
    s.m = m;
    s.q = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    s.v = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    return s;
}

TangentField TangentField::zero(int m, std::size_t nodes) {
    TangentField x;
    x.m = m;
    x.dq = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    x.dv = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    return x;
}

TangentField operator+(const TangentField& a, const TangentField& b) {
    return TangentField{a.m, a.dq + b.dq, a.dv + b.dv};
}
TangentField operator-(const TangentField& a, const TangentField& b) {
    return TangentField{a.m, a.dq - b.dq, a.dv - b.dv};
}
TangentField operator*(double s, const TangentField& x) {
    return TangentField{x.m, s * x.dq, s * x.dv};
}

PhaseSection advance(const PhaseSection& gamma, const TangentField& x, double t) {
    if (gamma.m != x.m || gamma.q.size() != x.dq.size())
        throw std::invalid_argument("advance: shape mismatch");
    return PhaseSection{gamma.m, gamma.q + t * x.dq, gamma.v + t * x.dv};
}

TangentField section_delta(const PhaseSection& to, const PhaseSection& from) {
    if (to.m != from.m || to.q.size() != from.q.size())
        throw std::invalid_argument("section_delta: shape mismatch");
    return TangentField{to.m, to.q - from.q, to.v - from.v};
}

double sup_norm(const TangentField& x) {
    double a = x.dq.size() ? x.dq.cwiseAbs().maxCoeff() : 0.0;
    double b = x.dv.size() ? x.dv.cwiseAbs().maxCoeff() : 0.0;
    return std::max(a, b);
}

void enforce_support(const Grid& grid, PhaseSection& gamma) {
    if (grid.boundary() == Boundary::periodic) return;
    for (std::size_t p = 0; p < grid.nodes(); ++p)
        if (grid.boundary_node(p)) {
            gamma.q_node(p).setZero();
            gamma.v_node(p).setZero();
        }
}

void enforce_support(const Grid& grid, TangentField& x) {
    if (grid.boundary() == Boundary::periodic) return;
    for (std::size_t p = 0; p < grid.nodes(); ++p)
        if (grid.boundary_node(p)) {
            x.dq_node(p).setZero();
            x.dv_node(p).setZero();
        }
}

void check_support(const Grid& grid, const PhaseSection& gamma, const char* where) {
    if (grid.boundary() == Boundary::periodic) return;
    for (std::size_t p = 0; p < grid.nodes(); ++p)
        if (grid.boundary_node(p)) {
            if (!gamma.q_node(p).isZero(0.0) || !gamma.v_node(p).isZero(0.0))
                throw std::invalid_argument(std::string(where) +
                                            ": section does not vanish on the support boundary");
        }
}

PhaseVector VerticalField::operator()(std::size_t p, const Vec& q, const Vec& v) const {
    PhaseVector out{Vec(m), Vec(m)};
    eval(p, q, v, out.q, out.v);
    return out;
}

Mat VerticalField::jacobian(std::size_t p, const Vec& q, const Vec& v, double eta) const {
    if (jacobian_fn) return jacobian_fn(p, q, v);
    if (affine) return affine->generator;
    // central differences in each of the 2m phase directions
    const int n = 2 * m;
    Mat jac(n, n);
    Vec zq = q, zv = v;
    Vec dp(m), dm(m), vp(m), vm(m);
    for (int k = 0; k < n; ++k) {
        double& slot = (k < m) ? zq[k] : zv[k - m];
        const double saved = slot;
        const double h = eta * std::max(1.0, std::abs(saved));
        slot = saved + h;
        eval(p, zq, zv, dp, vp);
        slot = saved - h;
        eval(p, zq, zv, dm, vm);
        slot = saved;
        jac.col(k).head(m) = (dp - dm) / (2.0 * h);
        jac.col(k).tail(m) = (vp - vm) / (2.0 * h);
    }
    return jac;
}

VerticalField constant_vertical(int m, Vec dq, Vec dv) {
    if (dq.size() != m || dv.size() != m)
        throw std::invalid_argument("constant_vertical: dimension mismatch");
    Vec offset(2 * m);
    offset << dq, dv;
    return affine_vertical(m, Mat::Zero(2 * m, 2 * m), std::move(offset));
}

VerticalField linear_vertical(int m, Mat generator) {
    return affine_vertical(m, std::move(generator), Vec::Zero(2 * m));
}

VerticalField affine_vertical(int m, Mat generator, Vec offset) {
    if (generator.rows() != 2 * m || generator.cols() != 2 * m || offset.size() != 2 * m)
        throw std::invalid_argument("affine_vertical: generator/offset must be 2m-dimensional");
    VerticalField f;
    f.m = m;
    f.affine = VerticalField::AffineRule{generator, offset};
    const Mat gen = std::move(generator);
    const Vec off = std::move(offset);
    f.eval = [m, gen, off](std::size_t, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v,
                           Eigen::Ref<Vec> dq, Eigen::Ref<Vec> dv) {
        Vec z(2 * m);
        z << q, v;
        const Vec out = gen * z + off;
        dq = out.head(m);
        dv = out.tail(m);
    };
    f.jacobian_fn = [gen](std::size_t, Eigen::Ref<const Vec>, Eigen::Ref<const Vec>) {
        return gen;
    };
    return f;
}

VerticalField rotation_vertical(int m) {
    Mat gen = Mat::Zero(2 * m, 2 * m);
    gen.topRightCorner(m, m) = Mat::Identity(m, m);
    gen.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
    return linear_vertical(m, std::move(gen));
}

VerticalField polynomial_vertical(int m, Vec c0, Mat c1, std::vector<Mat> c2) {
    const int n = 2 * m;
    if (c0.size() != n || c1.rows() != n || c1.cols() != n ||
        c2.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("polynomial_vertical: coefficient shapes must be 2m");
    for (auto& qf : c2) {
        if (qf.rows() != n || qf.cols() != n)
            throw std::invalid_argument("polynomial_vertical: quadratic blocks must be 2m x 2m");
        qf = (0.5 * (qf + qf.transpose())).eval();
    }
    VerticalField f;
    f.m = m;
    f.eval = [m, n, c0, c1, c2](std::size_t, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v,
                                Eigen::Ref<Vec> dq, Eigen::Ref<Vec> dv) {
        Vec z(n);
        z << q, v;
        Vec out = c0 + c1 * z;
        for (int i = 0; i < n; ++i) out[i] += z.dot(c2[static_cast<std::size_t>(i)] * z);
        dq = out.head(m);
        dv = out.tail(m);
    };
    f.jacobian_fn = [n, c1, c2](std::size_t, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v) {
        Vec z(n);
        z << q, v;
        Mat jac = c1;
        for (int i = 0; i < n; ++i) jac.row(i) += 2.0 * (c2[static_cast<std::size_t>(i)] * z).transpose();
        return jac;
    };
    return f;
}

VerticalField mask_boundary(const Grid& grid, VerticalField field) {
    if (grid.boundary() == Boundary::periodic) return field;
    std::vector<char> mask(grid.nodes(), 0);
    for (std::size_t p = 0; p < grid.nodes(); ++p)
        if (grid.boundary_node(p)) mask[p] = 1;
    VerticalField out;
    out.m = field.m;
    const auto inner = field; // keep the wrapped field alive in the closures
    out.eval = [inner, mask](std::size_t p, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v,
                             Eigen::Ref<Vec> dq, Eigen::Ref<Vec> dv) {
        if (mask[p]) {
            dq.setZero();
            dv.setZero();
        } else {
            inner.eval(p, q, v, dq, dv);
        }
    };
    out.jacobian_fn = [inner, mask](std::size_t p, Eigen::Ref<const Vec> q,
                                    Eigen::Ref<const Vec> v) -> Mat {
        if (mask[p]) return Mat::Zero(2 * inner.m, 2 * inner.m);
        return inner.jacobian(p, q, v);
    };
    return out;
}

VerticalField named_vertical(const std::string& name, int m, Rng& rng, double scale) {
    const int n = 2 * m;
    if (name == "constant")
        return constant_vertical(m, rng.uniform_vec(m, -scale, scale),
                                 rng.uniform_vec(m, -scale, scale));
    if (name == "rotation") return rotation_vertical(m);
    if (name == "linear") {
        Mat gen(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) gen(i, j) = rng.uniform(-scale, scale);
        return linear_vertical(m, std::move(gen));
    }
    if (name == "polynomial") {
        Vec c0 = rng.uniform_vec(n, -scale, scale);
        Mat c1(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) c1(i, j) = rng.uniform(-scale, scale);
        std::vector<Mat> c2;
        c2.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Mat qf(n, n);
            for (Index r = 0; r < n; ++r)
                for (Index c = 0; c < n; ++c) qf(r, c) = rng.uniform(-scale, scale);
            c2.push_back(std::move(qf));
        }
        return polynomial_vertical(m, std::move(c0), std::move(c1), std::move(c2));
    }
    throw std::invalid_argument("named_vertical: unknown field '" + name + "'");
}

TangentField hat_of_vertical(const VerticalField& field, const PhaseSection& gamma) {
    if (field.m != gamma.m) throw std::invalid_argument("hat_of_vertical: fiber mismatch");
    const std::size_t nodes = gamma.nodes();
    TangentField out = TangentField::zero(field.m, nodes);
    parallel_for(nodes, [&](std::size_t p) {
        field.eval(p, gamma.q_node(p), gamma.v_node(p), out.dq_node(p), out.dv_node(p));
    });
    return out;
}

namespace {

struct AffineMap {
    Mat a;
    Vec b;
};

AffineMap affine_flow_map(const VerticalField::AffineRule& rule, double t) {
    const Index n = rule.generator.rows();
    if (rule.generator.isZero(0.0)) // constant field: exact translation
        return {Mat::Identity(n, n), t * rule.offset};
    if (rule.offset.isZero(0.0)) return {(t * rule.generator).exp(), Vec::Zero(n)};
    // augmented generator [[M, c], [0, 0]]; its exponential carries the affine flow
    Mat aug = Mat::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = t * rule.generator;
    aug.topRightCorner(n, 1) = t * rule.offset;
    const Mat e = aug.exp();
    return {e.topLeftCorner(n, n), e.topRightCorner(n, 1)};
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    return {outer.a * inner.a, outer.a * inner.b + outer.b};
}

PhaseSection apply_affine(const AffineMap& map, const PhaseSection& gamma) {
    const int m = gamma.m;
    const std::size_t nodes = gamma.nodes();
    PhaseSection out = PhaseSection::zero(m, nodes);
    parallel_for(nodes, [&](std::size_t p) {
        Vec z(2 * m);
        z << gamma.q_node(p), gamma.v_node(p);
        const Vec w = map.a * z + map.b;
        out.q_node(p) = w.head(m);
        out.v_node(p) = w.tail(m);
    });
    return out;
}

int substep_count(double t, const FlowOptions& opt) {
    if (opt.substeps > 0) return opt.substeps;
    return std::max(1, static_cast<int>(std::ceil(std::abs(t) / opt.max_step)));
}

void check_finite(const PhaseSection& gamma, const char* where) {
    if (!gamma.q.allFinite() || !gamma.v.allFinite())
        throw std::runtime_error(std::string(where) + ": flow produced non-finite values (blow-up)");
}

} // namespace

PhaseSection tilde_flow(const VerticalField& field, const PhaseSection& gamma, double t,
                        const FlowOptions& opt) {
    if (field.m != gamma.m) throw std::invalid_argument("tilde_flow: fiber mismatch");
    if (t == 0.0) return gamma;

    if (field.affine) {
        const AffineMap map = affine_flow_map(*field.affine, t);
        PhaseSection out = apply_affine(map, gamma);
        check_finite(out, "tilde_flow");
        return out;
    }

    const int m = field.m;
    const int steps = substep_count(t, opt);
    const double h = t / steps;
    PhaseSection out = gamma;
    parallel_for(gamma.nodes(), [&](std::size_t p) {
        Vec q = gamma.q_node(p), v = gamma.v_node(p);
        Vec k1q(m), k1v(m), k2q(m), k2v(m), k3q(m), k3v(m), k4q(m), k4v(m);
        for (int s = 0; s < steps; ++s) {
            field.eval(p, q, v, k1q, k1v);
            field.eval(p, q + 0.5 * h * k1q, v + 0.5 * h * k1v, k2q, k2v);
            field.eval(p, q + 0.5 * h * k2q, v + 0.5 * h * k2v, k3q, k3v);
            field.eval(p, q + h * k3q, v + h * k3v, k4q, k4v);
            q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
            v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        }
        out.q_node(p) = q;
        out.v_node(p) = v;
    });
    check_finite(out, "tilde_flow");
    return out;
}

VerticalField vertical_bracket(const VerticalField& v, const VerticalField& w) {
    if (v.m != w.m) throw std::invalid_argument("vertical_bracket: fiber mismatch");
    const int m = v.m;

    if (v.affine && w.affine) {
        const Mat& mv = v.affine->generator;
        const Mat& mw = w.affine->generator;
        // [V, W](z) = (Mw Mv - Mv Mw) z + (Mw c_v - Mv c_w)
        return affine_vertical(m, mw * mv - mv * mw,
                               mw * v.affine->offset - mv * w.affine->offset);
    }

    VerticalField out;
    out.m = m;
    const auto fv = v;
    const auto fw = w;
    out.eval = [m, fv, fw](std::size_t p, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v_,
                           Eigen::Ref<Vec> dq, Eigen::Ref<Vec> dv) {
        const Vec qq = q, vv = v_;
        const PhaseVector a = fv(p, qq, vv);
        const PhaseVector b = fw(p, qq, vv);
        Vec za(2 * m), zb(2 * m);
        za << a.q, a.v;
        zb << b.q, b.v;
        const Vec res = fw.jacobian(p, qq, vv) * za - fv.jacobian(p, qq, vv) * zb;
        dq = res.head(m);
        dv = res.tail(m);
    };
    return out;
}

PhaseSection commutator_loop(const VerticalField& v, const VerticalField& w,
                             const PhaseSection& gamma, double t, const FlowOptions& opt) {
    if (v.affine && w.affine) {
        const AffineMap loop =
            compose(affine_flow_map(*w.affine, -t),
                    compose(affine_flow_map(*v.affine, -t),
                            compose(affine_flow_map(*w.affine, t), affine_flow_map(*v.affine, t))));
        return apply_affine(loop, gamma);
    }
    PhaseSection g = tilde_flow(v, gamma, t, opt);
    g = tilde_flow(w, g, t, opt);
    g = tilde_flow(v, g, -t, opt);
    g = tilde_flow(w, g, -t, opt);
    return g;
}

double bracket_preservation_residual(const VerticalField& v, const VerticalField& w,
                                     const PhaseSection& gamma, double t,
                                     const FlowOptions& opt) {
    if (t == 0.0) throw std::invalid_argument("bracket_preservation_residual: t must be nonzero");
    const PhaseSection looped = commutator_loop(v, w, gamma, t, opt);
    const PhaseSection ref = tilde_flow(vertical_bracket(v, w), gamma, t * t, opt);
    return sup_norm(section_delta(looped, ref)) / (t * t);
}

} // namespace secsym
