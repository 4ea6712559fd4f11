#include "movecrdt/ids.hpp"

namespace movecrdt {

std::string to_string(const OpId& id) {
    return "[" + std::to_string(id.counter) + "," + std::to_string(id.actor) + "]";
}

}  // namespace movecrdt
