#ifndef CONCORD_VERSION_HPP
#define CONCORD_VERSION_HPP

namespace concord {

inline constexpr const char* version = "0.1.0";

}

#endif
