#pragma once

#include <cstddef>
#include <string>

#include "routeprobe/trace.hpp"

namespace routeprobe {

/// Number of processes the trace's states are split into: ceil(n / chunk).
std::size_t chunk_count(std::size_t n_states, std::size_t chunk_size);

/// Emits the straight-line component for a trace. One state per record,
/// each broadcasting its five-tuple payload and continuing to the next
/// state; states are grouped into processes of at most chunk_size states,
/// with each process tail-calling the next and the final state ending in
/// `nil`. Coordinates are reproduced verbatim from the trace's lexemes.
/// Output is UTF-8 with LF line endings, stable across runs.
std::string emit_component(const Trace& trace, std::size_t chunk_size);

/// Exact line count of emit_component's output, computed without
/// materializing the text.
std::size_t estimate_emitted_size(const Trace& trace, std::size_t chunk_size);

}  // namespace routeprobe
