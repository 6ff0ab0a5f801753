#pragma once

#include <stdexcept>
#include <string>

namespace cmsent {

// Raised for malformed or insufficient input data: unreadable files, bad
// records, corpora too small for a requested split, and the like. Callers
// that need programmer-error signalling (bad n, wrong vector length) get
// std::invalid_argument instead.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmsent
