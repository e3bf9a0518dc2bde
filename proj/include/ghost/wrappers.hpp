#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ghost/object_model.hpp"

namespace ghost {

/// User hooks run around each wrapped execution. Defaults write pre/post
/// trace records and bump the per-selector counter.
struct WrapHooks {
    std::function<void(Runtime&, const Interception&)> pre;
    std::function<void(Runtime&, const Interception&)> post;
};

/// Installs a method proxy whose handler runs pre/post hooks around the
/// original method. Answers the proxy.
ObjectHandle wrap_method(Runtime& rt, ObjectHandle class_handle, const std::string& selector,
                         WrapHooks hooks = {});

/// Restores the original compiled method; errors if the selector is not
/// currently wrapped.
void unwrap_method(Runtime& rt, ObjectHandle class_handle, const std::string& selector);

/// One class proxy that brackets every instance-side send with pre/post.
ObjectHandle wrap_all_methods(Runtime& rt, ObjectHandle class_handle, WrapHooks hooks = {});

struct WrapCounterRow {
    std::string class_name;
    std::string selector;
    uint64_t count = 0;
};

std::vector<WrapCounterRow> wrapper_counters(const Runtime& rt);

} // namespace ghost
