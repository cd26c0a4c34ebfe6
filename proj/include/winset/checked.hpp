#pragma once

namespace winset {

// Expensive internal self-checks, off by default. Solvers consult this flag
// before re-verifying invariants that are redundant when the code is
// correct; a violation throws std::logic_error. Answers must not depend on
// the flag.
bool checked_mode();
void set_checked_mode(bool on);

namespace detail {
[[noreturn]] void fail_invariant(const char* what);
inline void invariant(bool ok, const char* what) {
    if (!ok) fail_invariant(what);
}
}  // namespace detail

}  // namespace winset
