#ifndef HOMOFORGE_ERRORS_HPP
#define HOMOFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homoforge {

/// Malformed input file. `line` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

} // namespace homoforge

#endif
