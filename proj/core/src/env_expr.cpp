#include "qcalc/env_expr.hpp"

#include <sstream>
#include <stdexcept>

#include "qcalc/delta_ops.hpp"
#include "qcalc/errors.hpp"

namespace qcalc {

struct EnvExpr::Node {
    Kind kind;
    DeltaPoly value;
    bool dp_q = false;  // member of the gamma_q closure
    bool dp_cl = false;
    std::vector<EnvExpr> children;
    unsigned long shift = 0;  // t_shift
    QSeries scalar;           // scale
    unsigned gen_index = 0;   // gen

    Node(Kind k, DeltaPoly v) : kind(k), value(std::move(v)) {}
};

namespace {

DeltaPoly checked_value(const EnvExpr& e) { return e.value(); }

}  // namespace

EnvExpr EnvExpr::atom(DeltaPoly z) {
    if (!z.p_integral())
        throw std::invalid_argument("EnvExpr::atom: coefficients are not p-integral");
    auto n = std::make_shared<Node>(Kind::atom, std::move(z));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::gen(const Int& p, unsigned gens, unsigned long trunc, unsigned r) {
    auto n = std::make_shared<Node>(Kind::gen, DeltaPoly::generator(p, gens, trunc, r));
    n->dp_q = n->dp_cl = true;
    n->gen_index = r;
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::t_shift(unsigned long k, EnvExpr e) {
    if (k == 0) return e;
    const DeltaPoly& v = e.value();
    DeltaPoly shifted = v.scaled(QSeries::t_power(v.trunc(), k));
    auto n = std::make_shared<Node>(Kind::t_shift, std::move(shifted));
    n->dp_q = n->dp_cl = true;
    n->shift = k;
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::gamma_q_of(EnvExpr e) {
    if (!e.divided_power_q())
        throw std::invalid_argument("EnvExpr::gamma_q_of: argument lacks a q-divided-power certificate");
    auto n = std::make_shared<Node>(Kind::gamma_q, gamma_q(e.value()));
    n->dp_q = true;
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::gamma_of(EnvExpr e) {
    if (!e.divided_power_classical())
        throw std::invalid_argument("EnvExpr::gamma_of: argument lacks a divided-power certificate");
    auto n = std::make_shared<Node>(Kind::gamma, gamma(e.value()));
    n->dp_cl = true;
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::phi_of(EnvExpr e) {
    auto n = std::make_shared<Node>(Kind::phi, frobenius(e.value()));
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::delta_of(EnvExpr e) {
    auto n = std::make_shared<Node>(Kind::delta, delta(e.value()));
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::sum(std::vector<EnvExpr> es) {
    if (es.empty()) throw std::invalid_argument("EnvExpr::sum: empty");
    DeltaPoly v = es[0].value();
    bool q = es[0].divided_power_q(), cl = es[0].divided_power_classical();
    for (size_t i = 1; i < es.size(); ++i) {
        v += es[i].value();
        q = q && es[i].divided_power_q();
        cl = cl && es[i].divided_power_classical();
    }
    auto n = std::make_shared<Node>(Kind::sum, std::move(v));
    n->dp_q = q;
    n->dp_cl = cl;
    n->children = std::move(es);
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::prod(std::vector<EnvExpr> es) {
    if (es.empty()) throw std::invalid_argument("EnvExpr::prod: empty");
    DeltaPoly v = es[0].value();
    bool q = es[0].divided_power_q(), cl = es[0].divided_power_classical();
    for (size_t i = 1; i < es.size(); ++i) {
        v *= es[i].value();
        q = q && es[i].divided_power_q();
        cl = cl && es[i].divided_power_classical();
    }
    auto n = std::make_shared<Node>(Kind::prod, std::move(v));
    n->dp_q = q;
    n->dp_cl = cl;
    n->children = std::move(es);
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::scale(EnvExpr e, QSeries c) {
    const DeltaPoly& v = e.value();
    if (!c.p_integral(v.prime()))
        throw std::invalid_argument("EnvExpr::scale: scalar is not p-integral");
    auto n = std::make_shared<Node>(Kind::scale, v.scaled(c));
    n->dp_q = e.divided_power_q();
    n->dp_cl = e.divided_power_classical();
    n->scalar = std::move(c);
    n->children.push_back(std::move(e));
    return EnvExpr(std::move(n));
}

EnvExpr EnvExpr::scale(EnvExpr e, const Rat& c) {
    unsigned long len = e.value().trunc();
    return scale(std::move(e), QSeries(len, c));
}

const DeltaPoly& EnvExpr::value() const {
    if (!n_) throw std::logic_error("EnvExpr: empty handle");
    return n_->value;
}
EnvExpr::Kind EnvExpr::kind() const {
    if (!n_) throw std::logic_error("EnvExpr: empty handle");
    return n_->kind;
}
bool EnvExpr::divided_power_q() const { return n_ && n_->dp_q; }
bool EnvExpr::divided_power_classical() const { return n_ && n_->dp_cl; }

size_t EnvExpr::node_count() const {
    size_t c = 1;
    for (const auto& ch : n_->children) c += ch.node_count();
    return c;
}

std::string EnvExpr::describe() const {
    std::ostringstream os;
    switch (n_->kind) {
        case Kind::atom: {
            std::string s = n_->value.str();
            if (s.size() > 48) s = s.substr(0, 45) + "...";
            os << "[" << s << "]";
            break;
        }
        case Kind::gen:
            os << 'x' << n_->gen_index;
            break;
        case Kind::t_shift:
            os << "t^" << n_->shift << "*" << n_->children[0].describe();
            break;
        case Kind::gamma_q:
            os << "gamma_q(" << n_->children[0].describe() << ")";
            break;
        case Kind::gamma:
            os << "gamma(" << n_->children[0].describe() << ")";
            break;
        case Kind::phi:
            os << "phi(" << n_->children[0].describe() << ")";
            break;
        case Kind::delta:
            os << "delta(" << n_->children[0].describe() << ")";
            break;
        case Kind::sum: {
            os << '(';
            for (size_t i = 0; i < n_->children.size(); ++i) {
                if (i) os << " + ";
                os << n_->children[i].describe();
            }
            os << ')';
            break;
        }
        case Kind::prod: {
            for (size_t i = 0; i < n_->children.size(); ++i) {
                if (i) os << '*';
                os << n_->children[i].describe();
            }
            break;
        }
        case Kind::scale:
            os << '(' << n_->scalar.str() << ")*" << n_->children[0].describe();
            break;
    }
    return os.str();
}

bool EnvExpr::verify() const {
    for (const auto& ch : n_->children)
        if (!ch.verify()) return false;
    try {
        switch (n_->kind) {
            case Kind::atom:
                return n_->value.p_integral();
            case Kind::gen:
                return n_->value ==
                       DeltaPoly::generator(n_->value.prime(), n_->value.gens(),
                                            n_->value.trunc(), n_->gen_index);
            case Kind::t_shift:
                return n_->shift >= 1 &&
                       n_->value == n_->children[0].value().scaled(QSeries::t_power(
                                        n_->value.trunc(), n_->shift));
            case Kind::gamma_q:
                return n_->children[0].divided_power_q() &&
                       n_->value == gamma_q(n_->children[0].value());
            case Kind::gamma:
                return n_->children[0].divided_power_classical() &&
                       n_->value == gamma(n_->children[0].value());
            case Kind::phi:
                return n_->value == frobenius(n_->children[0].value());
            case Kind::delta:
                return n_->value == delta(n_->children[0].value());
            case Kind::sum: {
                DeltaPoly v = checked_value(n_->children[0]);
                for (size_t i = 1; i < n_->children.size(); ++i) v += n_->children[i].value();
                return n_->value == v;
            }
            case Kind::prod: {
                DeltaPoly v = checked_value(n_->children[0]);
                for (size_t i = 1; i < n_->children.size(); ++i) v *= n_->children[i].value();
                return n_->value == v;
            }
            case Kind::scale:
                return n_->scalar.p_integral(n_->value.prime()) &&
                       n_->value == n_->children[0].value().scaled(n_->scalar);
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

}  // namespace qcalc
