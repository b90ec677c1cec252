#include "farekit/price.hpp"

#include <sstream>

namespace farekit {

std::string price::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << v_;
  return os.str();
}

}  // namespace farekit
