#ifndef HDA_ERRORS_HPP
#define HDA_ERRORS_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hda {

// Bad user input: malformed terms, unknown labels, ill-shaped files.
class UserError : public std::runtime_error {
 public:
  explicit UserError(const std::string& what) : std::runtime_error(what) {}
};

// A configurable resource guard tripped (state count, cube count, path count).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// HDA_SEM_GUARD overrides every resource guard at once.
inline std::size_t resource_guard(std::size_t default_value) {
  if (const char* env = std::getenv("HDA_SEM_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_value;
}

}  // namespace hda

#endif
