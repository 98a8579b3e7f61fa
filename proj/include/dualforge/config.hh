#ifndef DUALFORGE_CONFIG_HH
#define DUALFORGE_CONFIG_HH

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dualforge
{
    /// Base of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed input: bad files, unknown names, signature mismatches, violated preconditions.
    class InputError : public Error
    {
    public:
        using Error::Error;
    };

    /// Partial operations are rejected: every theorem handled here assumes total structures.
    class PartialOperationError : public InputError
    {
    public:
        using InputError::InputError;
    };

    /// A configured resource bound was exceeded. Never a silent truncation.
    class ResourceBoundError : public Error
    {
    public:
        using Error::Error;
    };

    struct Config
    {
        std::uint64_t max_power = 1'000'000;
        std::uint64_t max_closed_sets = 100'000;
        std::uint64_t max_nodes = 100'000'000;

        // Reverses branch orders in the searches. Outputs are canonicalised, so results must not change.
        bool alternate_order = false;

        unsigned workers = 1;
    };

    /// Process-wide defaults, set once by the CLI before any work starts.
    auto default_config() -> Config &;
}

#endif
