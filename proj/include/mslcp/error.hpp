#pragma once

#include <stdexcept>
#include <string>

namespace mslcp {

// Bad or inconsistent input data (instance files, job sets, CLI arguments).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The requested configuration is outside what an operation supports
// (e.g. max-flow cuts with more than one team per shift).
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A result failed one of its own invariants; indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mslcp
