#pragma once

#include <stdexcept>
#include <string>

namespace gbx {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad range, H > N, M <= 1, ...).
class domain_error : public error
{
public:
    using error::error;
};

/// Input data could not be used: parse failures, ordering violations,
/// empty tables, insufficient window coverage, version mismatches.
class data_error : public error
{
public:
    using error::error;
};

/// A requested computation exceeds a configured memory or size budget.
class resource_error : public error
{
public:
    using error::error;
};

/// An iterative numerical procedure did not converge.
class convergence_error : public error
{
public:
    using error::error;
};

namespace detail {

[[noreturn]] inline void throw_domain(std::string const & what)
{
    throw domain_error(what);
}

[[noreturn]] inline void throw_data(std::string const & what)
{
    throw data_error(what);
}

} // namespace detail

} // namespace gbx
