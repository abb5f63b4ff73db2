#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "varitz/optimizer.hpp"

namespace varitz {

// Training trace as CSV: header `iter,action,grad_norm,boundary_residual`
// plus a trailing `,lambda` column when the trace recorded one.  All floats
// are written with %.17g so a round-trip through text is bit-exact.
void write_trace_csv(const std::string& path, const TrainTrace& trace);

std::string format_double(double x); // %.17g

// Small append-only JSON object builder (insertion order preserved).  Values
// are rendered immediately; nest objects by adding a rendered child.
class JsonObject {
public:
    void add_string(const std::string& key, const std::string& value);
    void add_number(const std::string& key, double value);
    void add_integer(const std::string& key, long long value);
    void add_bool(const std::string& key, bool value);
    void add_null(const std::string& key);
    void add_object(const std::string& key, const JsonObject& child);

    std::string render(int indent = 0) const;

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

void write_text_file(const std::string& path, const std::string& contents);

// Parameter snapshots: an 8-byte magic, four little-endian uint32 header
// fields (outputs m, inputs n, width N, hidden layer count), a little-endian
// uint64 parameter count, then the flat float64 parameter vector.
struct ParamsHeader {
    std::uint32_t outputs = 0;
    std::uint32_t inputs = 0;
    std::uint32_t width = 0;
    std::uint32_t layers = 0;
};

struct ParamsSnapshot {
    ParamsHeader header;
    std::vector<double> theta;
};

void save_params(const std::string& path, const ParamsHeader& header,
                 const std::vector<double>& theta);
ParamsSnapshot load_params(const std::string& path);

} // namespace varitz
