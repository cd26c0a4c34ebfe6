#include "winset/checked.hpp"

#include <stdexcept>
#include <string>

namespace winset {

namespace {
bool g_checked = false;
}

bool checked_mode() { return g_checked; }
void set_checked_mode(bool on) { g_checked = on; }

namespace detail {
void fail_invariant(const char* what) {
    throw std::logic_error(std::string("invariant violated: ") + what);
}
}  // namespace detail

}  // namespace winset
