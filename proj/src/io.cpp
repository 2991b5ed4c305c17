#include "claimrank/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "claimrank/error.hpp"

namespace claimrank {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string json_hash(const json& value) { return hex64(fnv1a64(value.dump())); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed: " + path);
}

bool file_exists(const std::string& path) { return std::filesystem::is_regular_file(path); }

std::string file_hash(const std::string& path) { return hex64(fnv1a64(read_file(path))); }

void for_each_jsonl(const std::string& path,
                    const std::function<void(std::size_t, const json&)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(path, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) throw ValidationError(path, line_no, "expected a JSON object");
        fn(line_no, obj);
    }
}

std::string require_string(const json& obj, const char* field, const std::string& path,
                           std::size_t line, bool allow_empty) {
    auto it = obj.find(field);
    if (it == obj.end()) throw ValidationError(path, line, std::string("missing field '") + field + "'");
    if (!it->is_string())
        throw ValidationError(path, line, std::string("field '") + field + "' must be a string");
    auto value = it->get<std::string>();
    if (!allow_empty && value.empty())
        throw ValidationError(path, line, std::string("field '") + field + "' must be non-empty");
    return value;
}

std::int64_t require_int(const json& obj, const char* field, const std::string& path,
                         std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end()) throw ValidationError(path, line, std::string("missing field '") + field + "'");
    if (!it->is_number_integer())
        throw ValidationError(path, line, std::string("field '") + field + "' must be an integer");
    return it->get<std::int64_t>();
}

double require_number(const json& obj, const char* field, const std::string& path,
                      std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end()) throw ValidationError(path, line, std::string("missing field '") + field + "'");
    if (!it->is_number())
        throw ValidationError(path, line, std::string("field '") + field + "' must be a number");
    return it->get<double>();
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling on the top of the range keeps draws unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace claimrank
