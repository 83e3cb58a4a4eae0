#ifndef DECONF_ERRORS_HPP_
#define DECONF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace deconf {

/// Base for every error raised by the library. CLI exit codes are derived
/// from the concrete type (see cli.hpp).
class Error : public std::runtime_error {
 public:
   using std::runtime_error::runtime_error;
};

/// Malformed input: invalid mission, bad config, parse failure.
class InvalidArgument : public Error {
 public:
   using Error::Error;
};

class DegenerateRelativeVelocity : public Error {
 public:
   DegenerateRelativeVelocity()
       : Error("relative velocity is zero; closest approach is undefined") {}
};

/// The pair conflicts for every admissible delay.
class UnresolvablePair : public Error {
 public:
   UnresolvablePair(const std::string& first, const std::string& second)
       : Error("missions '" + first + "' and '" + second +
               "' cannot be separated by departure delay") {}
};

/// No departure instant inside the horizon avoids every conflict.
class EmptyFeasibleSet : public Error {
 public:
   explicit EmptyFeasibleSet(const std::string& mission_id = {})
       : Error(mission_id.empty()
                   ? std::string("feasible departure set is empty")
                   : "no feasible departure for mission '" + mission_id + "'"),
         mission_id_(mission_id) {}

   const std::string& mission_id() const noexcept { return mission_id_; }

 private:
   std::string mission_id_;
};

class TooManyAgents : public Error {
 public:
   using Error::Error;
};

class TopologyRejectionExhausted : public Error {
 public:
   using Error::Error;
};

class DegenerateSamples : public Error {
 public:
   using Error::Error;
};

class DomainError : public Error {
 public:
   using Error::Error;
};

class NonConvergence : public Error {
 public:
   using Error::Error;
};

class OutOfProjectionRange : public Error {
 public:
   using Error::Error;
};

}  // namespace deconf

#endif  // DECONF_ERRORS_HPP_
