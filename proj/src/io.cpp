#include "varitz/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace varitz {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trace_csv(const std::string& path, const TrainTrace& trace) {
    const bool with_lambda = !trace.lambda.empty();
    std::string text;
    text.reserve(64 * trace.iters.size() + 64);
    text += "iter,action,grad_norm,boundary_residual";
    if (with_lambda) text += ",lambda";
    text += '\n';
    char buf[256];
    for (std::size_t r = 0; r < trace.iters.size(); ++r) {
        if (with_lambda)
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n",
                          trace.iters[r], trace.action[r], trace.grad_norm[r],
                          trace.boundary_residual[r], trace.lambda[r]);
        else
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n",
                          trace.iters[r], trace.action[r], trace.grad_norm[r],
                          trace.boundary_residual[r]);
        text += buf;
    }
    write_text_file(path, text);
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

void JsonObject::add_string(const std::string& key, const std::string& value) {
    items_.emplace_back(key, "\"" + json_escape(value) + "\"");
}

void JsonObject::add_number(const std::string& key, double value) {
    items_.emplace_back(key, format_double(value));
}

void JsonObject::add_integer(const std::string& key, long long value) {
    items_.emplace_back(key, std::to_string(value));
}

void JsonObject::add_bool(const std::string& key, bool value) {
    items_.emplace_back(key, value ? "true" : "false");
}

void JsonObject::add_null(const std::string& key) {
    items_.emplace_back(key, "null");
}

void JsonObject::add_object(const std::string& key, const JsonObject& child) {
    items_.emplace_back(key, child.render(1));
}

std::string JsonObject::render(int indent) const {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < items_.size(); ++i) {
        out += inner;
        out += "\"" + json_escape(items_[i].first) + "\": " + items_[i].second;
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
    }
    out += pad + "}";
    return out;
}

namespace {

constexpr char kParamsMagic[8] = {'V', 'R', 'T', 'Z', 'P', 'R', 'M', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

void save_params(const std::string& path, const ParamsHeader& header,
                 const std::vector<double>& theta) {
    std::string out;
    out.reserve(32 + 8 * theta.size());
    out.append(kParamsMagic, sizeof(kParamsMagic));
    put_u32(out, header.outputs);
    put_u32(out, header.inputs);
    put_u32(out, header.width);
    put_u32(out, header.layers);
    put_u64(out, static_cast<std::uint64_t>(theta.size()));
    for (double x : theta) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof(bits));
        put_u64(out, bits);
    }
    write_text_file(path, out);
}

ParamsSnapshot load_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (data.size() < 32 ||
        std::memcmp(data.data(), kParamsMagic, sizeof(kParamsMagic)) != 0)
        throw std::runtime_error("not a parameter snapshot: " + path);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
    ParamsSnapshot snap;
    snap.header.outputs = get_u32(p + 8);
    snap.header.inputs = get_u32(p + 12);
    snap.header.width = get_u32(p + 16);
    snap.header.layers = get_u32(p + 20);
    const std::uint64_t count = get_u64(p + 24);
    if (data.size() != 32 + 8 * count)
        throw std::runtime_error("truncated parameter snapshot: " + path);
    snap.theta.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t bits = get_u64(p + 32 + 8 * i);
        double x;
        std::memcpy(&x, &bits, sizeof(x));
        snap.theta[i] = x;
    }
    return snap;
}

} // namespace varitz
