#pragma once

#include <stdexcept>
#include <string>

namespace bconv {

// Thrown when a requested computation would exceed a hard size limit
// (search windows, scan grids). The message says which limit and how to
// shrink the request.
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bconv
