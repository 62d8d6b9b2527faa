#ifndef DECOMP_ERROR_HPP
#define DECOMP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace decomp {

// Bad input data: out-of-range ids, malformed files, violated preconditions.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed. Always a bug (or a counterexample worth reporting).
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void require_input(bool ok, const std::string& what)
{
    if (!ok) throw InputError(what);
}

inline void require_invariant(bool ok, const std::string& what)
{
    if (!ok) throw InvariantError(what);
}

} // namespace decomp

#endif // DECOMP_ERROR_HPP
