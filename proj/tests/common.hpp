#pragma once

#include "gbx/lambda.hpp"
#include "gbx/zeta.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace testing_support {

/// Lambda over [1, 3e6], sieved once per process.
inline gbx::lambda_window const & window()
{
    static gbx::lambda_window const w = gbx::sieve_window(1, 3'000'000, {std::size_t{1} << 18, 4});
    return w;
}

inline gbx::psi_table const & psi()
{
    static gbx::psi_table const t(window());
    return t;
}

/// The first 1e5 zeros, generated at build time.
inline gbx::zero_set const & zeros()
{
    static gbx::zero_set const z = gbx::load_zeros(GBX_ZERO_TABLE);
    return z;
}

inline std::string data_file(char const * name)
{
    return (std::filesystem::path(GBX_DATA_DIR) / name).string();
}

inline std::filesystem::path scratch_dir(char const * name)
{
    auto const p = std::filesystem::temp_directory_path() / ("gbx-test-" + std::string(name));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace testing_support
