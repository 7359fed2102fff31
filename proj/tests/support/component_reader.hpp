// Test-only reader for emitted straight-line components. Re-parses the
// text into the payload sequence it denotes, verifying the chunk chain as
// it goes, so chunking can be checked to be semantics-preserving.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace component_reader {

struct ReadPayload {
    std::string latitude_text;
    std::string longitude_text;
    int hour = 0;
    int minute = 0;
    int second = 0;
};

struct ReadComponent {
    std::string component_name;
    std::size_t process_count = 0;
    std::vector<ReadPayload> payloads;  // in state order
};

inline ReadComponent read_component(const std::string& text) {
    ReadComponent out;
    std::size_t expected_state = 0;
    std::size_t current_process = 0;
    bool saw_nil = false;
    bool in_process = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) break;
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto fail = [&](const std::string& why) {
            throw std::runtime_error("component line " +
                                     std::to_string(line_no) + ": " + why);
        };

        // strip indentation
        std::size_t first = line.find_first_not_of(' ');
        if (first == std::string::npos) continue;
        line = line.substr(first);

        if (line.rfind("component ", 0) == 0) {
            std::size_t brace = line.find(" {");
            if (brace == std::string::npos) fail("missing '{'");
            out.component_name = line.substr(10, brace - 10);
            continue;
        }
        if (line.rfind("process P", 0) == 0) {
            std::size_t brace = line.find(" {");
            if (brace == std::string::npos) fail("missing '{'");
            std::size_t id = std::stoul(line.substr(9, brace - 9));
            if (id != out.process_count) fail("process out of order");
            ++out.process_count;
            current_process = id;
            in_process = true;
            continue;
        }
        if (line == "}") continue;
        if (line.rfind("init ", 0) == 0) {
            if (line != "init P0") fail("component must start at P0");
            continue;
        }

        // state line: S<i> = move*[true]<lat,long,h,m,s>.<continuation>;
        if (line.rfind("S", 0) != 0) fail("unrecognized line: " + line);
        if (!in_process) fail("state outside a process block");
        std::size_t eq = line.find(" = move*[true]<");
        if (eq == std::string::npos) fail("malformed state line");
        std::size_t state_id = std::stoul(line.substr(1, eq - 1));
        if (state_id != expected_state) fail("state out of order");
        ++expected_state;

        std::size_t open = eq + 15;
        std::size_t close = line.find(">.", open);
        if (close == std::string::npos) fail("missing payload close");
        std::string payload = line.substr(open, close - open);

        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = payload.find(',', start);
            if (comma == std::string::npos) {
                parts.push_back(payload.substr(start));
                break;
            }
            parts.push_back(payload.substr(start, comma - start));
            start = comma + 1;
        }
        if (parts.size() != 5) fail("payload is not a five-tuple");

        ReadPayload p;
        p.latitude_text = parts[0];
        p.longitude_text = parts[1];
        p.hour = std::stoi(parts[2]);
        p.minute = std::stoi(parts[3]);
        p.second = std::stoi(parts[4]);
        out.payloads.push_back(p);

        std::string continuation =
            line.substr(close + 2, line.size() - close - 3);
        if (line.back() != ';') fail("missing ';'");
        if (continuation == "nil") {
            saw_nil = true;
        } else if (continuation.rfind("P", 0) == 0) {
            if (std::stoul(continuation.substr(1)) != current_process + 1) {
                fail("chunk must tail-call the next process");
            }
        } else if (continuation.rfind("S", 0) == 0) {
            if (std::stoul(continuation.substr(1)) != expected_state) {
                fail("state must continue to its successor");
            }
        } else {
            fail("unrecognized continuation '" + continuation + "'");
        }
    }

    if (!saw_nil) {
        throw std::runtime_error("component has no terminal state");
    }
    return out;
}

}  // namespace component_reader
