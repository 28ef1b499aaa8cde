#ifndef NFW_BENCH_LIBSVM_HPP
#define NFW_BENCH_LIBSVM_HPP

#include <stdexcept>
#include <string>

#include "nfw/bench/dataset.hpp"

namespace nfw::bench {

/// Malformed or unusable input data; the message carries the line number.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a file in LIBSVM sparse format ("label idx:val ...", 1-based,
/// strictly increasing indices per line).  The two distinct label values
/// are mapped onto {-1, +1} by sorted order (smaller -> -1).
Dataset parse_libsvm(const std::string& path);

/// Writes a labeled sparse dataset back out; parse_libsvm(write) is
/// lossless.
void write_libsvm(const std::string& path, const Dataset& data);

}  // namespace nfw::bench

#endif  // NFW_BENCH_LIBSVM_HPP
