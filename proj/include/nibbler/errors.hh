#ifndef NIBBLER_GUARD_ERRORS_HH
#define NIBBLER_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace nibbler
{
    /// Malformed input data (bad graph files, duplicate edges, out-of-range indices).
    class InvalidInput : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// An operation was called outside its stated preconditions.
    class PreconditionViolated : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// A randomised procedure ran out of its retry or round budget.
    class BudgetExhausted : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class IoError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };
}

#endif
