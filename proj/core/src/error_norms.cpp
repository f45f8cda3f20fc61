#include "stwave/error_norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stwave/exceptions.hpp"

namespace stwave {

namespace {

// Values and first derivatives of a discrete solution at the tensor quadrature points
// of one space-time element, laid out [qt][qx].
class ElementSampler {
public:
    ElementSampler(const DiscreteSolution& uh, const QuadraturePlan& plan_x, const TemporalQuadraturePlan& plan_t)
        : uh_(uh), plan_x_(plan_x), plan_t_(plan_t), nb_(uh.basis().size()), local_(nb_ * nb_), b_(nb_), bt_(nb_) {
        for (const auto& r : plan_x.rules()) {
            tables_x_.push_back(tabulate(uh.basis(), r.points));
        }
        for (const auto& r : plan_t.rules()) {
            tables_t_.push_back(tabulate(uh.basis(), r.points));
        }
    }

    void sample(std::size_t kx, std::size_t kt) {
        uh_.local_coefficients(kx, kt, local_);
        const auto& tx = tables_x_[plan_x_.rule_index(kx)];
        const auto& tt = tables_t_[plan_t_.rule_index(kt)];
        const std::size_t nqx = tx.num_points;
        const std::size_t nqt = tt.num_points;
        const double hx = uh_.mesh_x().element_size(kx);
        const double ht = uh_.mesh_t().element_size(kt);
        value.assign(nqt * nqx, 0.0);
        d_t.assign(nqt * nqx, 0.0);
        d_x.assign(nqt * nqx, 0.0);
        for (std::size_t qt = 0; qt < nqt; ++qt) {
            std::fill(b_.begin(), b_.end(), 0.0);
            std::fill(bt_.begin(), bt_.end(), 0.0);
            for (std::size_t at = 0; at < nb_; ++at) {
                const double phi = tt.value(qt, at);
                const double dphi = tt.deriv(qt, at) / ht;
                for (std::size_t ax = 0; ax < nb_; ++ax) {
                    b_[ax] += local_[at * nb_ + ax] * phi;
                    bt_[ax] += local_[at * nb_ + ax] * dphi;
                }
            }
            for (std::size_t qx = 0; qx < nqx; ++qx) {
                double v = 0.0;
                double vt = 0.0;
                double vx = 0.0;
                for (std::size_t ax = 0; ax < nb_; ++ax) {
                    v += b_[ax] * tx.value(qx, ax);
                    vt += bt_[ax] * tx.value(qx, ax);
                    vx += b_[ax] * tx.deriv(qx, ax);
                }
                value[qt * nqx + qx] = v;
                d_t[qt * nqx + qx] = vt;
                d_x[qt * nqx + qx] = vx / hx;
            }
        }
    }

    std::vector<double> value;
    std::vector<double> d_t;
    std::vector<double> d_x;

private:
    const DiscreteSolution& uh_;
    const QuadraturePlan& plan_x_;
    const TemporalQuadraturePlan& plan_t_;
    std::size_t nb_;
    std::vector<BasisTable> tables_x_;
    std::vector<BasisTable> tables_t_;
    std::vector<double> local_;
    std::vector<double> b_;
    std::vector<double> bt_;
};

void check_plans(const Mesh1D& mx, const Mesh1D& mt, const QuadraturePlan& px, const TemporalQuadraturePlan& pt) {
    if (px.num_elements() != mx.num_elements() || pt.num_elements() != mt.num_elements()) {
        throw StructuralError("quadrature plan does not match the mesh");
    }
}

} // namespace

DiscreteSolution::DiscreteSolution(std::span<const double> coeffs, const Mesh1D& mesh_x, const Mesh1D& mesh_t,
                                   const LagrangeBasis& basis)
    : coeffs_(coeffs), mesh_x_(mesh_x), mesh_t_(mesh_t), basis_(basis),
      mx_(mesh_x.num_elements() * static_cast<std::size_t>(basis.degree()) - 1) {
    const std::size_t nt = mesh_t.num_elements() * static_cast<std::size_t>(basis.degree());
    if (coeffs.size() != mx_ * nt) {
        throw StructuralError("DiscreteSolution: expected " + std::to_string(mx_ * nt) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    }
}

void DiscreteSolution::local_coefficients(std::size_t kx, std::size_t kt, std::span<double> out) const {
    const int p = basis_.degree();
    const std::size_t nb = basis_.size();
    const std::size_t last_x = mesh_x_.num_elements() * static_cast<std::size_t>(p);
    for (std::size_t at = 0; at < nb; ++at) {
        const std::size_t n = global_node(kt, at, p);
        for (std::size_t ax = 0; ax < nb; ++ax) {
            const std::size_t g = global_node(kx, ax, p);
            out[at * nb + ax] = (n == 0 || g == 0 || g == last_x) ? 0.0 : coeffs_[(n - 1) * mx_ + (g - 1)];
        }
    }
}

double DiscreteSolution::value(double x, double t) const {
    auto locate = [](const Mesh1D& m, double y) {
        const auto v = m.vertices();
        const auto it = std::upper_bound(v.begin(), v.end(), y);
        std::size_t k = it == v.begin() ? 0 : static_cast<std::size_t>(it - v.begin()) - 1;
        return std::min(k, m.num_elements() - 1);
    };
    const std::size_t kx = locate(mesh_x_, x);
    const std::size_t kt = locate(mesh_t_, t);
    const double xi = (x - mesh_x_.element_left(kx)) / mesh_x_.element_size(kx);
    const double tau = (t - mesh_t_.element_left(kt)) / mesh_t_.element_size(kt);
    const std::size_t nb = basis_.size();
    std::vector<double> local(nb * nb);
    local_coefficients(kx, kt, local);
    double v = 0.0;
    for (std::size_t at = 0; at < nb; ++at) {
        for (std::size_t ax = 0; ax < nb; ++ax) {
            v += local[at * nb + ax] * basis_.eval(at, tau) * basis_.eval(ax, xi);
        }
    }
    return v;
}

ErrorPair error_norms(const DiscreteSolution& uh, const ExactSolution& exact, const QuadraturePlan& plan_x,
                      const TemporalQuadraturePlan& plan_t) {
    const auto& mesh_x = uh.mesh_x();
    const auto& mesh_t = uh.mesh_t();
    check_plans(mesh_x, mesh_t, plan_x, plan_t);
    ElementSampler sampler(uh, plan_x, plan_t);
    double l2 = 0.0;
    double h1 = 0.0;
    for (std::size_t kt = 0; kt < mesh_t.num_elements(); ++kt) {
        const auto& rt = plan_t.rule(kt);
        const double t0 = mesh_t.element_left(kt);
        const double ht = mesh_t.element_size(kt);
        for (std::size_t kx = 0; kx < mesh_x.num_elements(); ++kx) {
            const auto& rx = plan_x.rule(kx);
            const double x0 = mesh_x.element_left(kx);
            const double hx = mesh_x.element_size(kx);
            sampler.sample(kx, kt);
            double l2_el = 0.0;
            double h1_el = 0.0;
            for (std::size_t qt = 0; qt < rt.size(); ++qt) {
                const double t = t0 + ht * rt.points[qt];
                for (std::size_t qx = 0; qx < rx.size(); ++qx) {
                    const double x = x0 + hx * rx.points[qx];
                    const std::size_t q = qt * rx.size() + qx;
                    const double e = exact.u(x, t) - sampler.value[q];
                    const double et = exact.du_dt(x, t) - sampler.d_t[q];
                    const double ex = exact.du_dx(x, t) - sampler.d_x[q];
                    if (!std::isfinite(e) || !std::isfinite(et) || !std::isfinite(ex)) {
                        throw EvaluationError("error_norms: non-finite sample", x, t);
                    }
                    const double w = rt.weights[qt] * rx.weights[qx];
                    l2_el += w * e * e;
                    h1_el += w * (et * et + ex * ex);
                }
            }
            l2 += hx * ht * l2_el;
            h1 += hx * ht * h1_el;
        }
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

double l2_norm(const DiscreteSolution& uh, const QuadraturePlan& plan_x, const TemporalQuadraturePlan& plan_t) {
    const auto& mesh_x = uh.mesh_x();
    const auto& mesh_t = uh.mesh_t();
    check_plans(mesh_x, mesh_t, plan_x, plan_t);
    ElementSampler sampler(uh, plan_x, plan_t);
    double s = 0.0;
    for (std::size_t kt = 0; kt < mesh_t.num_elements(); ++kt) {
        const auto& rt = plan_t.rule(kt);
        for (std::size_t kx = 0; kx < mesh_x.num_elements(); ++kx) {
            const auto& rx = plan_x.rule(kx);
            sampler.sample(kx, kt);
            double el = 0.0;
            for (std::size_t qt = 0; qt < rt.size(); ++qt) {
                for (std::size_t qx = 0; qx < rx.size(); ++qx) {
                    const double v = sampler.value[qt * rx.size() + qx];
                    el += rt.weights[qt] * rx.weights[qx] * v * v;
                }
            }
            s += mesh_x.element_size(kx) * mesh_t.element_size(kt) * el;
        }
    }
    return std::sqrt(s);
}

double l2_norm(const SpaceTimeFunction& g, const Mesh1D& mesh_x, const Mesh1D& mesh_t, const QuadraturePlan& plan_x,
               const TemporalQuadraturePlan& plan_t) {
    check_plans(mesh_x, mesh_t, plan_x, plan_t);
    double s = 0.0;
    for (std::size_t kt = 0; kt < mesh_t.num_elements(); ++kt) {
        const auto& rt = plan_t.rule(kt);
        const double t0 = mesh_t.element_left(kt);
        const double ht = mesh_t.element_size(kt);
        for (std::size_t kx = 0; kx < mesh_x.num_elements(); ++kx) {
            const auto& rx = plan_x.rule(kx);
            const double x0 = mesh_x.element_left(kx);
            const double hx = mesh_x.element_size(kx);
            double el = 0.0;
            for (std::size_t qt = 0; qt < rt.size(); ++qt) {
                const double t = t0 + ht * rt.points[qt];
                for (std::size_t qx = 0; qx < rx.size(); ++qx) {
                    const double x = x0 + hx * rx.points[qx];
                    const double v = g(x, t);
                    if (!std::isfinite(v)) {
                        throw EvaluationError("l2_norm: non-finite sample", x, t);
                    }
                    el += rt.weights[qt] * rx.weights[qx] * v * v;
                }
            }
            s += hx * ht * el;
        }
    }
    return std::sqrt(s);
}

double l2_distance(const DiscreteSolution& a, const DiscreteSolution& b, const QuadraturePlan& plan_x,
                   const TemporalQuadraturePlan& plan_t) {
    if (!(a.mesh_x() == b.mesh_x()) || !(a.mesh_t() == b.mesh_t())) {
        throw StructuralError("l2_distance: discrete functions live on different meshes");
    }
    const auto& mesh_x = a.mesh_x();
    const auto& mesh_t = a.mesh_t();
    check_plans(mesh_x, mesh_t, plan_x, plan_t);
    ElementSampler sa(a, plan_x, plan_t);
    ElementSampler sb(b, plan_x, plan_t);
    double s = 0.0;
    for (std::size_t kt = 0; kt < mesh_t.num_elements(); ++kt) {
        const auto& rt = plan_t.rule(kt);
        for (std::size_t kx = 0; kx < mesh_x.num_elements(); ++kx) {
            const auto& rx = plan_x.rule(kx);
            sa.sample(kx, kt);
            sb.sample(kx, kt);
            double el = 0.0;
            for (std::size_t qt = 0; qt < rt.size(); ++qt) {
                for (std::size_t qx = 0; qx < rx.size(); ++qx) {
                    const std::size_t q = qt * rx.size() + qx;
                    const double d = sa.value[q] - sb.value[q];
                    el += rt.weights[qt] * rx.weights[qx] * d * d;
                }
            }
            s += mesh_x.element_size(kx) * mesh_t.element_size(kt) * el;
        }
    }
    return std::sqrt(s);
}

std::vector<double> eoc(std::span<const double> errors) {
    if (errors.size() < 2) {
        throw InvalidParameter("eoc: need at least two errors");
    }
    for (double e : errors) {
        if (!(e > 0.0)) {
            throw InvalidParameter("eoc: errors must be positive, got " + std::to_string(e));
        }
    }
    std::vector<double> out;
    out.reserve(errors.size() - 1);
    for (std::size_t k = 1; k < errors.size(); ++k) {
        out.push_back(std::log(errors[k - 1] / errors[k]) / std::log(2.0));
    }
    return out;
}

} // namespace stwave
