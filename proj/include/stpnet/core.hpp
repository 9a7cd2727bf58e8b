#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace stpnet {

/// Thrown when an operation would build a matrix larger than the configured
/// entry cap. STP chains grow exponentially; the cap turns a runaway
/// computation into an error instead of an OOM.
class size_cap_error : public std::runtime_error {
public:
    explicit size_cap_error(const std::string& what) : std::runtime_error(what) {}
};

class dimension_error : public std::runtime_error {
public:
    explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

class unbound_variable_error : public std::runtime_error {
public:
    explicit unbound_variable_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline std::atomic<std::size_t>& cap_storage() {
    static std::atomic<std::size_t> cap{std::size_t{1} << 20};
    return cap;
}
}  // namespace detail

inline std::size_t size_cap() { return detail::cap_storage().load(); }
inline void set_size_cap(std::size_t entries) { detail::cap_storage().store(entries); }

inline void check_size_cap(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > size_cap() / rows) {
        throw size_cap_error("matrix of " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " entries exceeds the size cap of " +
                             std::to_string(size_cap()));
    }
}

}  // namespace stpnet
