#include "ddoslab/error.hpp"

namespace ddoslab {

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

}  // namespace ddoslab
