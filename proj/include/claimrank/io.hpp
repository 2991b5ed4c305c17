#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace claimrank {

using json = nlohmann::json;

// 64-bit FNV-1a. Used for config and content hashes that end up in
// artifact files, so the value must not depend on the platform.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

// Hash of the canonical (sorted-key, compact) JSON dump.
std::string json_hash(const json& value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
bool file_exists(const std::string& path);
std::string file_hash(const std::string& path);

// Calls fn(line_no, object) for every non-blank line. Parse failures and
// non-object lines raise ValidationError with the 1-based line number.
void for_each_jsonl(const std::string& path,
                    const std::function<void(std::size_t, const json&)>& fn);

// Field accessors that report the offending field name and line.
std::string require_string(const json& obj, const char* field, const std::string& path,
                           std::size_t line, bool allow_empty = true);
std::int64_t require_int(const json& obj, const char* field, const std::string& path,
                         std::size_t line);
double require_number(const json& obj, const char* field, const std::string& path,
                      std::size_t line);

// Seeded PRNG with a fixed algorithm (mt19937_64, whose output sequence is
// pinned by the C++ standard). Bounded draws and shuffles are implemented
// here rather than through <random> distributions, which are not portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);
    // Uniform real in [0, 1) with 53 bits of precision.
    double uniform();

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace claimrank
