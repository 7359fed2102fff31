#include "routeprobe/codegen.hpp"

#include <algorithm>
#include <cctype>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

namespace {

std::string component_name(const std::string& vehicle_id) {
    std::string name = "Bus_";
    for (char c : vehicle_id) {
        name += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    return name;
}

}  // namespace

std::size_t chunk_count(std::size_t n_states, std::size_t chunk_size) {
    if (chunk_size == 0) {
        throw ValidationError("chunk_size must be at least 1");
    }
    return (n_states + chunk_size - 1) / chunk_size;
}

std::string emit_component(const Trace& trace, std::size_t chunk_size) {
    const std::size_t n = trace.size();
    const std::size_t chunks = chunk_count(n, chunk_size);

    std::string out = "component " + component_name(trace.vehicle_id()) + " {\n";
    for (std::size_t c = 0; c < chunks; ++c) {
        out += "  process P" + std::to_string(c) + " {\n";
        const std::size_t begin = c * chunk_size;
        const std::size_t end = std::min(n, begin + chunk_size);
        for (std::size_t i = begin; i < end; ++i) {
            const Observation& obs = trace.observations()[i];
            out += "    S" + std::to_string(i) + " = move*[true]<" +
                   obs.latitude_text + "," + obs.longitude_text + "," +
                   detail::pad2(obs.time.hour) + "," +
                   detail::pad2(obs.time.minute) + "," +
                   detail::pad2(obs.time.second) + ">.";
            if (i + 1 == n) {
                out += "nil";
            } else if (i + 1 == end) {
                out += "P" + std::to_string(c + 1);  // tail-call next chunk
            } else {
                out += "S" + std::to_string(i + 1);
            }
            out += ";\n";
        }
        out += "  }\n";
    }
    out += "  init P0\n";
    out += "}\n";
    return out;
}

std::size_t estimate_emitted_size(const Trace& trace,
                                  std::size_t chunk_size) {
    // One line per state, two per process block, three for the component
    // frame (header, init, closing brace).
    return trace.size() + 2 * chunk_count(trace.size(), chunk_size) + 3;
}

}  // namespace routeprobe
