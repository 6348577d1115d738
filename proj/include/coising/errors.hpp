#pragma once

#include <stdexcept>
#include <string>

namespace coising {

/// Malformed input documents (graph files, schedule tables, JSON).
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Unknown catalog or lookup keys.
class lookup_error : public std::runtime_error {
  public:
    explicit lookup_error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that cannot run within its size/memory caps.
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace coising
