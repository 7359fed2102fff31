#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routeprobe/guard.hpp"
#include "routeprobe/trace.hpp"

namespace routeprobe {

struct ProbeTransition {
    std::string from;
    GuardExpr guard;
    std::string to;
};

/// The probe always starts in one named state.
struct FixedInitial {
    std::string state;
    bool operator==(const FixedInitial&) const = default;
};

/// The probe starts in the state mapped from the first fix's region;
/// a first fix in no mapped region starts in the error state.
struct FromFirstObservation {
    std::map<std::string, std::string> region_to_state;
    bool operator==(const FromFirstObservation&) const = default;
};

using InitialPolicy = std::variant<FixedInitial, FromFirstObservation>;

/// A predicate-guarded finite-state probe automaton. Plain definition
/// data; validation against a RegionSet happens in ValidatedProbe.
/// Immutable in practice: construct once, then share freely.
struct ProbeDef {
    std::string name;
    std::vector<std::string> states;
    std::string error_state;
    std::vector<ProbeTransition> transitions;
    InitialPolicy initial = FixedInitial{};

    std::size_t out_degree(std::string_view state) const;
    std::vector<const ProbeTransition*> transitions_from(
        std::string_view state) const;
};

/// The route probe of the paper's operative form: one state per region,
/// chain adjacency airport--suburbs1--suburbs2--centre--garage with
/// self-loops, an absorbing ERROR state, and initial state chosen from
/// the first observation's region.
ProbeDef builtin_loose();

/// The direction-separating route probe: outward states S1A/S2A and
/// return states S2R/S1R, fixed initial state A (airport starts only).
ProbeDef builtin_strict();

/// Looks up "loose"/"strict"; nullopt for anything else.
std::optional<ProbeDef> builtin_probe(std::string_view name);

/// A ProbeDef checked against a RegionSet:
///   - states are unique, error state declared and absorbing
///     (exactly one outgoing transition, a guard-true self-loop);
///   - every guard's regions resolve in rs;
///   - per state, non-error guards are pairwise disjoint (exact check over
///     classification cells);
///   - explicit error transitions, if any, normalize to the complement of
///     the state's non-error guards; when omitted they are derived, so
///     every validated probe carries its error transitions explicitly.
/// Construction throws ValidationError on any violation.
class ValidatedProbe {
public:
    ValidatedProbe(ProbeDef def, const RegionSet& rs);

    const ProbeDef& def() const noexcept { return def_; }
    const RegionSet& regions() const noexcept { return *rs_; }

    std::size_t state_count() const noexcept { return def_.states.size(); }
    std::size_t error_index() const noexcept { return error_index_; }
    std::size_t state_index(std::string_view name) const;
    const std::string& state_name(std::size_t index) const {
        return def_.states[index];
    }

    /// Outgoing transitions of a state, non-error targets first, the
    /// error transition last (mirrors the error-last transition rule).
    const std::vector<const ProbeTransition*>& outgoing(
        std::size_t state) const {
        return outgoing_[state];
    }

    /// Initial state for a trace whose first observation is `first`.
    std::size_t initial_state_index(const Observation& first) const;

private:
    ProbeDef def_;
    const RegionSet* rs_;
    std::size_t error_index_ = 0;
    std::vector<std::vector<const ProbeTransition*>> outgoing_;
};

/// Spec-level convenience: the name of the state a validated probe starts
/// in for the given first observation.
std::string initial_state(const ProbeDef& def, const Observation& first,
                          const RegionSet& rs);

/// Parses a probe definition file and validates it against rs. Format:
///   name: <identifier>                      (optional)
///   states: <s1>, <s2>, ...
///   error_state: <s>
///   initial: fixed <state>
///   initial: from_first_observation <region>=<state>, ...
///   transition: <from> | <guard> | <to>
/// `#` comments and blank lines are skipped. Error transitions may be
/// omitted (derived) or written explicitly (checked for equivalence).
ProbeDef parse_probe(std::string_view text, const RegionSet& rs,
                     std::string_view source_name = "<probe>");

/// Structural equality after guard normalization: same states, error
/// state and initial policy; for each state the same multiset of
/// (target, guard truth table) transitions. Insensitive to state order,
/// transition order and guard spelling.
bool probe_equivalent(const ProbeDef& a, const ProbeDef& b,
                      const RegionSet& rs);

/// Single-owner mutable run state for one (trace, probe) pair.
/// Independent cursors may advance concurrently.
class ProbeCursor {
public:
    struct HistoryEntry {
        std::size_t event_index;
        long elapsed_s;
        std::size_t state;
    };

    ProbeCursor(const ValidatedProbe& probe, const Observation& first);

    const ValidatedProbe& probe() const noexcept { return *probe_; }
    std::size_t current() const noexcept { return current_; }
    const std::string& current_name() const {
        return probe_->state_name(current_);
    }
    bool in_error() const noexcept {
        return current_ == probe_->error_index();
    }

    /// Applies the error-last step rule to one event: if exactly one
    /// non-error guard holds for the event's position, move there; if
    /// none holds, enter the error state. Throws ValidationError if two
    /// non-error guards hold (precluded by probe validation).
    void step(const MoveEvent& event);

    /// States seen so far, including the initial state. Indexed by state.
    const std::vector<bool>& visited() const noexcept { return visited_; }
    bool visited_state(std::string_view name) const;

    /// One entry per processed event.
    const std::vector<HistoryEntry>& history() const noexcept {
        return history_;
    }

    /// Event index of the first entry into the error state; index 0 when
    /// the initial policy already selected it.
    std::optional<std::size_t> error_event_index() const noexcept {
        return error_event_;
    }

private:
    void enter(std::size_t state, std::size_t event_index);

    const ValidatedProbe* probe_;
    std::size_t current_;
    std::vector<bool> visited_;
    std::vector<HistoryEntry> history_;
    std::optional<std::size_t> error_event_;
};

/// Free-function form of ProbeCursor::step; rs must be the set the
/// cursor's probe was validated against.
void step(ProbeCursor& cursor, const MoveEvent& event, const RegionSet& rs);

}  // namespace routeprobe
