#ifndef JPSTRAT_VERSION_HPP
#define JPSTRAT_VERSION_HPP

namespace jps {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // JPSTRAT_VERSION_HPP
