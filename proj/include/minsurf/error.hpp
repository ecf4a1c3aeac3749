// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

/// Base of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameter (jet order, catalog degree, grid size).
class config_error : public error
{
public:
    using error::error;
};

/// API misuse: mismatched jet orders, unknown surface names, insufficient order.
class usage_error : public error
{
public:
    using error::error;
};

/// A quantity hit a removable singularity (division by zero, sqrt of a nonpositive value).
class singularity_error : public error
{
public:
    using error::error;
};

/// Chart point outside the usable domain, or a degenerate induced metric.
class domain_error : public error
{
public:
    using error::error;
};

/// Report file could not be written.
class io_error : public error
{
public:
    using error::error;
};

} // namespace minsurf
