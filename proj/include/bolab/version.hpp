#ifndef BOLAB_VERSION_HPP
#define BOLAB_VERSION_HPP

namespace bolab {
inline constexpr const char* version = "0.1.0";
}

#endif
