#ifndef CHDBC_VERSION_HPP
#define CHDBC_VERSION_HPP

namespace chdbc {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
