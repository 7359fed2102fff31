#include "routeprobe/probe.hpp"

#include <algorithm>
#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

std::size_t ProbeDef::out_degree(std::string_view state) const {
    std::size_t n = 0;
    for (const ProbeTransition& t : transitions) {
        if (t.from == state) ++n;
    }
    return n;
}

std::vector<const ProbeTransition*> ProbeDef::transitions_from(
    std::string_view state) const {
    std::vector<const ProbeTransition*> out;
    for (const ProbeTransition& t : transitions) {
        if (t.from == state) out.push_back(&t);
    }
    return out;
}

namespace {

GuardExpr in(const char* region) { return GuardExpr::in_region(region); }

// Fig-8 style error guard: the conjunction of the negations of the
// state's non-error guards.
GuardExpr complement_of(const std::vector<GuardExpr>& guards) {
    if (guards.empty()) return GuardExpr::constant(true);
    GuardExpr result = GuardExpr::negation(guards[0]);
    for (std::size_t i = 1; i < guards.size(); ++i) {
        result = GuardExpr::conjunction(std::move(result),
                                        GuardExpr::negation(guards[i]));
    }
    return result;
}

void add_state_block(ProbeDef& def, const std::string& from,
                     std::vector<std::pair<GuardExpr, std::string>> moves) {
    std::vector<GuardExpr> non_error;
    non_error.reserve(moves.size());
    for (auto& [guard, to] : moves) {
        non_error.push_back(guard);
        def.transitions.push_back(ProbeTransition{from, std::move(guard), to});
    }
    def.transitions.push_back(
        ProbeTransition{from, complement_of(non_error), def.error_state});
}

}  // namespace

ProbeDef builtin_loose() {
    ProbeDef def;
    def.name = "loose";
    def.states = {"AIRPORT", "SUBURBS1", "SUBURBS2", "CENTRE", "GARAGE",
                  "ERROR"};
    def.error_state = "ERROR";
    def.initial = FromFirstObservation{{
        {"airport", "AIRPORT"},
        {"suburbs1", "SUBURBS1"},
        {"suburbs2", "SUBURBS2"},
        {"centre", "CENTRE"},
        {"garage", "GARAGE"},
    }};

    add_state_block(def, "AIRPORT",
                    {{in("airport"), "AIRPORT"}, {in("suburbs1"), "SUBURBS1"}});
    add_state_block(def, "SUBURBS1",
                    {{in("suburbs1"), "SUBURBS1"},
                     {in("airport"), "AIRPORT"},
                     {in("suburbs2"), "SUBURBS2"}});
    add_state_block(def, "SUBURBS2",
                    {{in("suburbs2"), "SUBURBS2"},
                     {in("suburbs1"), "SUBURBS1"},
                     {in("centre"), "CENTRE"}});
    add_state_block(def, "CENTRE",
                    {{in("centre"), "CENTRE"},
                     {in("suburbs2"), "SUBURBS2"},
                     {in("garage"), "GARAGE"}});
    add_state_block(def, "GARAGE",
                    {{in("garage"), "GARAGE"}, {in("centre"), "CENTRE"}});
    def.transitions.push_back(
        ProbeTransition{"ERROR", GuardExpr::constant(true), "ERROR"});
    return def;
}

ProbeDef builtin_strict() {
    ProbeDef def;
    def.name = "strict";
    def.states = {"A", "S1A", "S2A", "C", "G", "S2R", "S1R", "E"};
    def.error_state = "E";
    def.initial = FixedInitial{"A"};

    add_state_block(def, "A",
                    {{in("airport"), "A"}, {in("suburbs1"), "S1A"}});
    add_state_block(def, "S1A",
                    {{in("suburbs1"), "S1A"}, {in("suburbs2"), "S2A"}});
    add_state_block(def, "S2A",
                    {{in("suburbs2"), "S2A"}, {in("centre"), "C"}});
    add_state_block(def, "C",
                    {{in("centre"), "C"},
                     {in("garage"), "G"},
                     {in("suburbs2"), "S2R"}});
    add_state_block(def, "G", {{in("garage"), "G"}, {in("centre"), "C"}});
    add_state_block(def, "S2R",
                    {{in("suburbs2"), "S2R"}, {in("suburbs1"), "S1R"}});
    add_state_block(def, "S1R",
                    {{in("suburbs1"), "S1R"}, {in("airport"), "A"}});
    def.transitions.push_back(
        ProbeTransition{"E", GuardExpr::constant(true), "E"});
    return def;
}

std::optional<ProbeDef> builtin_probe(std::string_view name) {
    if (name == "loose") return builtin_loose();
    if (name == "strict") return builtin_strict();
    return std::nullopt;
}

namespace {

std::string cell_name(std::size_t cell, const RegionSet& rs) {
    return cell < rs.size() ? "region '" + rs.regions()[cell].name + "'"
                            : std::string("outside all regions");
}

}  // namespace

ValidatedProbe::ValidatedProbe(ProbeDef def, const RegionSet& rs)
    : def_(std::move(def)), rs_(&rs) {
    if (def_.states.empty()) {
        throw ValidationError("probe '" + def_.name + "' declares no states");
    }
    for (std::size_t i = 0; i < def_.states.size(); ++i) {
        for (std::size_t j = i + 1; j < def_.states.size(); ++j) {
            if (def_.states[i] == def_.states[j]) {
                throw ValidationError("probe '" + def_.name +
                                      "' declares state '" + def_.states[i] +
                                      "' twice");
            }
        }
    }
    if (def_.error_state.empty()) {
        throw ValidationError("probe '" + def_.name +
                              "' is missing an error state");
    }
    auto find_state = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < def_.states.size(); ++i) {
            if (def_.states[i] == name) return i;
        }
        throw ValidationError("probe '" + def_.name +
                              "' references undeclared state '" + name + "'");
    };
    error_index_ = find_state(def_.error_state);

    for (const ProbeTransition& t : def_.transitions) {
        find_state(t.from);
        find_state(t.to);
        t.guard.bind(rs);
    }

    if (const auto* fixed = std::get_if<FixedInitial>(&def_.initial)) {
        find_state(fixed->state);
    } else {
        const auto& map =
            std::get<FromFirstObservation>(def_.initial).region_to_state;
        for (const auto& [region, state] : map) {
            if (!rs.index_of(region)) {
                throw ValidationError("probe '" + def_.name +
                                      "' maps unknown region '" + region +
                                      "'");
            }
            find_state(state);
        }
    }

    // Per-state guard analysis over classification cells.
    const std::size_t n_cells = rs.size() + 1;
    for (std::size_t s = 0; s < def_.states.size(); ++s) {
        const std::string& state = def_.states[s];
        std::vector<const ProbeTransition*> non_error;
        std::vector<const ProbeTransition*> to_error;
        for (const ProbeTransition& t : def_.transitions) {
            if (t.from != state) continue;
            (t.to == def_.error_state ? to_error : non_error).push_back(&t);
        }

        if (s == error_index_) {
            // Absorbing: exactly one outgoing self-loop that always fires.
            if (!non_error.empty() || to_error.size() != 1) {
                throw ValidationError(
                    "error state '" + state +
                    "' must have exactly one outgoing self-loop");
            }
            auto table = guard_truth_table(to_error[0]->guard, rs);
            if (std::find(table.begin(), table.end(), false) != table.end()) {
                throw ValidationError("error state '" + state +
                                      "' self-loop guard must be true");
            }
            continue;
        }

        std::vector<std::vector<bool>> tables;
        tables.reserve(non_error.size());
        for (const ProbeTransition* t : non_error) {
            tables.push_back(guard_truth_table(t->guard, rs));
        }
        for (std::size_t i = 0; i < tables.size(); ++i) {
            for (std::size_t j = i + 1; j < tables.size(); ++j) {
                for (std::size_t cell = 0; cell < n_cells; ++cell) {
                    if (tables[i][cell] && tables[j][cell]) {
                        throw ValidationError(
                            "probe '" + def_.name + "' state '" + state +
                            "': guards '" + non_error[i]->guard.to_string() +
                            "' and '" + non_error[j]->guard.to_string() +
                            "' are both enabled for " + cell_name(cell, rs));
                    }
                }
            }
        }

        std::vector<bool> covered(n_cells, false);
        for (const auto& table : tables) {
            for (std::size_t cell = 0; cell < n_cells; ++cell) {
                if (table[cell]) covered[cell] = true;
            }
        }

        if (to_error.empty()) {
            std::vector<GuardExpr> guards;
            guards.reserve(non_error.size());
            for (const ProbeTransition* t : non_error) {
                guards.push_back(t->guard);
            }
            def_.transitions.push_back(ProbeTransition{
                state, complement_of(guards), def_.error_state});
        } else {
            // Explicit error guards must normalize to the exact complement
            // of the non-error guards.
            std::vector<bool> error_union(n_cells, false);
            for (const ProbeTransition* t : to_error) {
                auto table = guard_truth_table(t->guard, rs);
                for (std::size_t cell = 0; cell < n_cells; ++cell) {
                    if (table[cell]) error_union[cell] = true;
                }
            }
            for (std::size_t cell = 0; cell < n_cells; ++cell) {
                if (error_union[cell] == covered[cell]) {
                    throw ValidationError(
                        "probe '" + def_.name + "' state '" + state +
                        "': explicit error guard is not the complement of "
                        "the other guards (mismatch for " +
                        cell_name(cell, rs) + ")");
                }
            }
        }
    }

    outgoing_.resize(def_.states.size());
    for (std::size_t s = 0; s < def_.states.size(); ++s) {
        for (const ProbeTransition& t : def_.transitions) {
            if (t.from == def_.states[s] && t.to != def_.error_state) {
                outgoing_[s].push_back(&t);
            }
        }
        for (const ProbeTransition& t : def_.transitions) {
            if (t.from == def_.states[s] && t.to == def_.error_state) {
                outgoing_[s].push_back(&t);
            }
        }
    }
}

std::size_t ValidatedProbe::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < def_.states.size(); ++i) {
        if (def_.states[i] == name) return i;
    }
    throw ValidationError("probe '" + def_.name + "' has no state '" +
                          std::string(name) + "'");
}

std::size_t ValidatedProbe::initial_state_index(
    const Observation& first) const {
    if (const auto* fixed = std::get_if<FixedInitial>(&def_.initial)) {
        return state_index(fixed->state);
    }
    const auto& map =
        std::get<FromFirstObservation>(def_.initial).region_to_state;
    auto region = rs_->classify(first.point());
    if (region) {
        auto it = map.find(*region);
        if (it != map.end()) return state_index(it->second);
    }
    return error_index_;
}

std::string initial_state(const ProbeDef& def, const Observation& first,
                          const RegionSet& rs) {
    ValidatedProbe probe(def, rs);
    return probe.state_name(probe.initial_state_index(first));
}

ProbeDef parse_probe(std::string_view text, const RegionSet& rs,
                     std::string_view source_name) {
    ProbeDef def;
    def.name = "probe";
    bool saw_states = false;
    bool saw_error = false;
    bool saw_initial = false;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;

        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(std::string(source_name), line_no,
                             "expected '<directive>: <value>'");
        }
        std::string_view key = detail::trim(line.substr(0, colon));
        std::string_view value = detail::trim(line.substr(colon + 1));

        if (key == "name") {
            if (!detail::is_identifier(value)) {
                throw ParseError(std::string(source_name), line_no,
                                 "'" + std::string(value) +
                                     "' is not a valid probe name");
            }
            def.name = std::string(value);
        } else if (key == "states") {
            for (std::string_view field : detail::split_fields(value, ',')) {
                if (!detail::is_identifier(field)) {
                    throw ParseError(std::string(source_name), line_no,
                                     "'" + std::string(field) +
                                         "' is not a valid state name");
                }
                def.states.emplace_back(field);
            }
            saw_states = true;
        } else if (key == "error_state") {
            def.error_state = std::string(value);
            saw_error = true;
        } else if (key == "initial") {
            std::size_t space = value.find_first_of(" \t");
            std::string_view mode =
                space == std::string_view::npos ? value
                                                : value.substr(0, space);
            std::string_view rest =
                space == std::string_view::npos
                    ? std::string_view{}
                    : detail::trim(value.substr(space + 1));
            if (mode == "fixed") {
                if (rest.empty()) {
                    throw ParseError(std::string(source_name), line_no,
                                     "'initial: fixed' needs a state name");
                }
                def.initial = FixedInitial{std::string(rest)};
            } else if (mode == "from_first_observation") {
                FromFirstObservation policy;
                for (std::string_view field :
                     detail::split_fields(rest, ',')) {
                    std::size_t eq = field.find('=');
                    if (eq == std::string_view::npos) {
                        throw ParseError(
                            std::string(source_name), line_no,
                            "expected '<region>=<state>', got '" +
                                std::string(field) + "'");
                    }
                    std::string region(detail::trim(field.substr(0, eq)));
                    std::string state(detail::trim(field.substr(eq + 1)));
                    if (region.empty() || state.empty()) {
                        throw ParseError(std::string(source_name), line_no,
                                         "empty region or state in mapping");
                    }
                    if (!policy.region_to_state.emplace(region, state)
                             .second) {
                        throw ParseError(std::string(source_name), line_no,
                                         "region '" + region +
                                             "' mapped twice");
                    }
                }
                def.initial = std::move(policy);
            } else {
                throw ParseError(std::string(source_name), line_no,
                                 "initial policy must be 'fixed' or "
                                 "'from_first_observation'");
            }
            saw_initial = true;
        } else if (key == "transition") {
            const auto parts = detail::split_fields(value, '|');
            if (parts.size() != 3) {
                throw ParseError(std::string(source_name), line_no,
                                 "expected '<from> | <guard> | <to>'");
            }
            GuardExpr guard = parse_guard(parts[1], source_name, line_no);
            def.transitions.push_back(ProbeTransition{
                std::string(parts[0]), std::move(guard),
                std::string(parts[2])});
        } else {
            throw ParseError(std::string(source_name), line_no,
                             "unknown directive '" + std::string(key) + "'");
        }
    }

    if (!saw_states) {
        throw ParseError(std::string(source_name), lines.size(),
                         "missing 'states:' directive");
    }
    if (!saw_error) {
        throw ParseError(std::string(source_name), lines.size(),
                         "missing 'error_state:' directive");
    }
    if (!saw_initial) {
        throw ParseError(std::string(source_name), lines.size(),
                         "missing 'initial:' directive");
    }

    // The error state's self-loop may be left implicit in files.
    bool error_has_outgoing = false;
    for (const ProbeTransition& t : def.transitions) {
        if (t.from == def.error_state) error_has_outgoing = true;
    }
    if (!error_has_outgoing) {
        def.transitions.push_back(ProbeTransition{
            def.error_state, GuardExpr::constant(true), def.error_state});
    }

    ValidatedProbe validated(std::move(def), rs);
    return validated.def();
}

bool probe_equivalent(const ProbeDef& a, const ProbeDef& b,
                      const RegionSet& rs) {
    ValidatedProbe va(a, rs);
    ValidatedProbe vb(b, rs);
    const ProbeDef& da = va.def();
    const ProbeDef& db = vb.def();

    auto sorted_states = [](const ProbeDef& d) {
        std::vector<std::string> s = d.states;
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sorted_states(da) != sorted_states(db)) return false;
    if (da.error_state != db.error_state) return false;
    if (!(da.initial == db.initial)) return false;

    auto normalized = [&](const ProbeDef& d) {
        // (from, to, guard truth table), sorted.
        std::vector<std::pair<std::pair<std::string, std::string>,
                              std::vector<bool>>>
            rows;
        for (const ProbeTransition& t : d.transitions) {
            rows.push_back({{t.from, t.to}, guard_truth_table(t.guard, rs)});
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    return normalized(da) == normalized(db);
}

ProbeCursor::ProbeCursor(const ValidatedProbe& probe, const Observation& first)
    : probe_(&probe),
      current_(probe.initial_state_index(first)),
      visited_(probe.state_count(), false) {
    visited_[current_] = true;
    if (current_ == probe_->error_index()) {
        error_event_ = 0;  // in error from the first event on
    }
}

void ProbeCursor::enter(std::size_t state, std::size_t event_index) {
    current_ = state;
    visited_[state] = true;
    if (state == probe_->error_index() && !error_event_) {
        error_event_ = event_index;
    }
}

void ProbeCursor::step(const MoveEvent& event) {
    const GeoPoint p = event.payload.point();
    const RegionSet& rs = probe_->regions();

    const ProbeTransition* taken = nullptr;
    for (const ProbeTransition* t : probe_->outgoing(current_)) {
        if (t->to == probe_->def().error_state) continue;
        if (evaluate_guard(t->guard, p, rs)) {
            if (taken != nullptr) {
                throw ValidationError(
                    "probe '" + probe_->def().name + "' state '" +
                    current_name() + "': guards '" + taken->guard.to_string() +
                    "' and '" + t->guard.to_string() +
                    "' both enabled at the same event");
            }
            taken = t;
        }
    }
    // Error-last rule: the error transition fires only when nothing else can.
    enter(taken != nullptr ? probe_->state_index(taken->to)
                           : probe_->error_index(),
          event.index);
    history_.push_back(HistoryEntry{event.index, event.elapsed_s, current_});
}

bool ProbeCursor::visited_state(std::string_view name) const {
    for (std::size_t i = 0; i < probe_->state_count(); ++i) {
        if (visited_[i] && probe_->state_name(i) == name) return true;
    }
    return false;
}

void step(ProbeCursor& cursor, const MoveEvent& event, const RegionSet& rs) {
    if (&rs != &cursor.probe().regions()) {
        throw ValidationError(
            "step: cursor was validated against a different region set");
    }
    cursor.step(event);
}

}  // namespace routeprobe
