#ifndef DOCCLUST_ERRORS_HPP
#define DOCCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace docclust {

/// Bad input data: malformed files, inconsistent lengths, degenerate clusters.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller asked for something the configuration does not allow (k > n, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace docclust

#endif  // DOCCLUST_ERRORS_HPP
