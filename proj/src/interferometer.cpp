#include "absim/interferometer.hpp"

#include <cmath>
#include <sstream>

namespace absim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

LinOp element_matrix(const Element &e) {
    switch (e.kind) {
        case ElementKind::BeamSplitter:
            return LinOp(2, {kInvSqrt2, cdouble(0.0, kInvSqrt2), cdouble(0.0, kInvSqrt2), kInvSqrt2});
        case ElementKind::Phase:
        case ElementKind::Flux: {
            std::vector<cdouble> m = {1.0, 0.0, 0.0, 1.0};
            m[static_cast<size_t>(e.rail_a) * 2 + e.rail_a] = cdouble(std::cos(e.value), std::sin(e.value));
            return LinOp(2, std::move(m));
        }
    }
    throw Error("element_matrix: unknown element kind");
}

}  // namespace

void Network::declare_arm(const std::string &label, int rail) {
    if (rail < 0 || rail >= kDim) {
        throw UnknownArmError("declare_arm: rail out of range");
    }
    arms_.emplace_back(label, rail);
}

void Network::add_cut(const std::string &name) {
    cuts_.emplace_back(name, elements_.size());
}

void Network::add_beamsplitter() {
    elements_.push_back({ElementKind::BeamSplitter, 0, 1, 0.0});
}

void Network::add_phase(const std::string &arm, double value) {
    elements_.push_back({ElementKind::Phase, rail_of(arm), -1, value});
}

void Network::add_flux(const std::string &arm, double value) {
    elements_.push_back({ElementKind::Flux, rail_of(arm), -1, value});
}

int Network::rail_of(const std::string &arm) const {
    for (const auto &[label, rail] : arms_) {
        if (label == arm) {
            return rail;
        }
    }
    throw UnknownArmError("unknown arm label '" + arm + "'");
}

size_t Network::cut_position(const std::string &name) const {
    for (const auto &[cut, pos] : cuts_) {
        if (cut == name) {
            return pos;
        }
    }
    throw UnknownCutError("unknown cut '" + name + "'");
}

LinOp Network::transfer(const std::string &from_cut, const std::string &to_cut) const {
    const size_t from = cut_position(from_cut);
    const size_t to = cut_position(to_cut);
    if (from > to) {
        throw OrderViolationError("transfer: cut '" + from_cut + "' follows '" + to_cut + "'");
    }
    LinOp u = identity_op(kDim);
    for (size_t i = from; i < to; ++i) {
        u = matmul(element_matrix(elements_[i]), u);
    }
    return u;
}

LinOp Network::end_to_end() const {
    LinOp u = identity_op(kDim);
    for (const auto &e : elements_) {
        u = matmul(element_matrix(e), u);
    }
    return u;
}

std::string Network::describe() const {
    std::ostringstream os;
    size_t next_cut = 0;
    for (size_t i = 0; i <= elements_.size(); ++i) {
        while (next_cut < cuts_.size() && cuts_[next_cut].second == i) {
            os << "[" << cuts_[next_cut].first << "] ";
            ++next_cut;
        }
        if (i == elements_.size()) {
            break;
        }
        const Element &e = elements_[i];
        switch (e.kind) {
            case ElementKind::BeamSplitter:
                os << "BS ";
                break;
            case ElementKind::Phase:
                os << "phase(rail" << e.rail_a << "," << e.value << ") ";
                break;
            case ElementKind::Flux:
                os << "flux(rail" << e.rail_a << "," << e.value << ") ";
                break;
        }
    }
    std::string s = os.str();
    if (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
    return s;
}

LinOp arm_projector(const Network &net, const std::string &arm) {
    const int rail = net.rail_of(arm);
    std::vector<cdouble> e(4, 0.0);
    e[static_cast<size_t>(rail) * 2 + rail] = 1.0;
    return LinOp(2, std::move(e));
}

Ket standard_input() {
    return ket_L();
}

std::array<double, 2> exit_probabilities(const Network &net, const Ket &input) {
    const Ket out = apply(net.end_to_end(), input);
    return {std::norm(out.amps[0]), std::norm(out.amps[1])};
}

Network build_single_mzi(double flux) {
    Network net;
    net.add_cut("source");
    net.add_beamsplitter();
    net.declare_arm("L1", 0);
    net.declare_arm("R1", 1);
    net.add_cut("mid1");
    net.add_flux("L1", flux);
    net.add_beamsplitter();
    net.declare_arm("L", 0);
    net.declare_arm("R", 1);
    net.add_cut("output");
    return net;
}

Network build_double_mzi(double flux) {
    Network net;
    net.add_cut("source");
    net.add_beamsplitter();  // BS_a
    net.declare_arm("L1", 0);
    net.declare_arm("R1", 1);
    net.add_cut("mid1");
    net.add_phase("L1", kMzi1TuningPhase);
    net.add_beamsplitter();  // BS_b
    net.declare_arm("L2", 0);
    net.declare_arm("R2", 1);
    net.add_cut("mid2");
    net.add_flux("L2", flux);
    net.add_beamsplitter();  // BS_c
    net.declare_arm("L", 0);
    net.declare_arm("R", 1);
    net.add_cut("output");
    return net;
}

std::pair<cdouble, cdouble> mzi1_weak_trajectory(double flux, const std::string &post_port) {
    const Network net = build_double_mzi(flux);
    const Ket pre0 = standard_input();
    const int post_rail = net.rail_of(post_port);
    const Ket post1 = post_rail == 0 ? ket_L() : ket_R();

    const LinOp forward = net.transfer("source", "mid1");
    const LinOp backward = net.transfer("mid1", "output");
    const double p_select = postselect_probability(pre0, net.end_to_end(), post1);
    if (p_select <= kOverlapEpsilon * kOverlapEpsilon) {
        throw OrthogonalSelectionError("mzi1_weak_trajectory: postselection never succeeds");
    }

    const TwoStateVector tsv = make_tsv(pre0, forward, post1, backward);
    return {weak_value(tsv, arm_projector(net, "L1")), weak_value(tsv, arm_projector(net, "R1"))};
}

}  // namespace absim
