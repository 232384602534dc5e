#ifndef QSPSKT_COMMON_HPP
#define QSPSKT_COMMON_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace qspskt {

using Complex = std::complex<double>;

/// Numerical tolerances used across the library. All defaults centralized
/// here so tests can reference one source of truth.
struct Tolerances {
    double unitarity = 1e-12;   // ||U^dag U - I||_op after construction/products
    double comparison = 1e-10;  // generic matrix comparisons
    double structure = 1e-9;    // planarity / symmetry checks over grids
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

/// Error taxonomy mirrored by the C API status codes.
enum class ErrorCode {
    Precondition = 2,
    Convergence = 3,
    Parse = 4,
    Internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail_precondition(const std::string& what) {
    throw Error(ErrorCode::Precondition, what);
}
[[noreturn]] inline void fail_convergence(const std::string& what) {
    throw Error(ErrorCode::Convergence, what);
}
[[noreturn]] inline void fail_parse(const std::string& what) {
    throw Error(ErrorCode::Parse, what);
}

/// Thread cap for parallel sections; honors QSPSKT_THREADS.
int worker_count();

/// Runs fn(i) for i in [0, n). Falls back to serial when n is small or the
/// worker cap is 1. Results must be written to disjoint slots by index so the
/// outcome is deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qspskt

#endif
