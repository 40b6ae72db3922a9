#ifndef UAFORGE_ERROR_HPP_
#define UAFORGE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uaforge {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Raised when an enumeration would exceed one of the size guards.
  class GuardError : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

}  // namespace uaforge

#endif  // UAFORGE_ERROR_HPP_
