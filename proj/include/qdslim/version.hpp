#ifndef QDSLIM_VERSION_HPP
#define QDSLIM_VERSION_HPP

namespace qdslim {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
