#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "absim/hilbert.hpp"
#include "absim/tsvf.hpp"

namespace absim {

enum class ElementKind { BeamSplitter, Phase, Flux };

/// One optical element on the two rails. Beam splitters act on both rails
/// with the fixed symmetric matrix (1/sqrt2) [[1, i], [i, 1]]; phase and flux
/// multiply a single rail's amplitude by exp(i value).
struct Element {
    ElementKind kind;
    int rail_a;       // beamsplitter: first rail; phase/flux: the rail acted on
    int rail_b;       // beamsplitter only
    double value;     // radians; unused for the fixed 50:50 beamsplitter
};

/// Serial two-rail interferometer network. Rail 0 carries the left-side arm
/// labels (L, L1, L2), rail 1 the right-side ones; arm labels alias rails per
/// segment. Cuts name positions in the element list where states are
/// evaluated or weak couplings attach.
class Network {
  public:
    static constexpr int kDim = 2;

    void declare_arm(const std::string &label, int rail);
    void add_cut(const std::string &name);  // at the current end of the list
    void add_beamsplitter();
    void add_phase(const std::string &arm, double value);
    void add_flux(const std::string &arm, double value);

    int rail_of(const std::string &arm) const;           // UnknownArmError
    size_t cut_position(const std::string &name) const;  // UnknownCutError

    /// Product of element matrices between two cuts (from must not follow to).
    LinOp transfer(const std::string &from_cut, const std::string &to_cut) const;
    LinOp end_to_end() const;

    const std::vector<Element> &elements() const {
        return elements_;
    }
    const std::vector<std::pair<std::string, size_t>> &cuts() const {
        return cuts_;
    }
    const std::vector<std::pair<std::string, int>> &arms() const {
        return arms_;
    }

    /// One-line geometry summary for reports.
    std::string describe() const;

  private:
    std::vector<std::pair<std::string, int>> arms_;      // label -> rail
    std::vector<std::pair<std::string, size_t>> cuts_;   // name -> element index
    std::vector<Element> elements_;
};

/// Hermitian idempotent projector onto the arm's rail basis vector.
LinOp arm_projector(const Network &net, const std::string &arm);

/// Basis state entering the first beamsplitter on rail 0 (the standard
/// input port).
Ket standard_input();

/// Exit probability per rail for a given input state.
std::array<double, 2> exit_probabilities(const Network &net, const Ket &input);

/// Balanced Mach-Zehnder: BS -> arms {L1, R1} with cut "mid1" and a flux
/// phase on L1 -> BS -> ports {L, R}. With zero flux the standard input
/// exits entirely on port R (the bright port).
Network build_single_mzi(double flux);

/// Two chained Mach-Zehnders sharing the middle beamsplitter. The first one
/// is tuned (phase 0 on L1 under the symmetric beamsplitter convention) so
/// the forward wave leaves the middle splitter entirely on arm R2; the flux
/// phase sits on arm L2, which therefore carries no forward amplitude.
/// Cuts: "source", "mid1", "mid2", "output".
Network build_double_mzi(double flux);

/// Internal phase of the first Mach-Zehnder that empties arm L2, derived by
/// solving (e^{i phi} - 1)/2 = 0 for the standard input.
inline constexpr double kMzi1TuningPhase = 0.0;

/// Weak values of the {L1, R1} arm projectors at cut "mid1" for the standard
/// input and a postselection on `post_port` ("L" or "R"); they sum to 1.
std::pair<cdouble, cdouble> mzi1_weak_trajectory(double flux, const std::string &post_port);

}  // namespace absim
