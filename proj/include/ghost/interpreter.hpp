#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>

#include "ghost/object_model.hpp"

namespace ghost {

/// Lexical environment for compiled-method and block activation. Blocks
/// capture the enclosing environment by reference (shared ownership), so
/// writes from inside a block are visible outside.
struct Env {
    std::shared_ptr<Env> parent;
    std::unordered_map<std::string, Value> locals;
    Value self;
    ObjectHandle defining_class;
    const std::map<std::string, int>* ivars = nullptr;
    bool top_level = false;

    Value* find_local(const std::string& name) {
        for (Env* e = this; e; e = e->parent.get()) {
            auto it = e->locals.find(name);
            if (it != e->locals.end()) return &it->second;
        }
        return nullptr;
    }
};

Value activate_compiled(Runtime& rt, MethodMeta& meta, Value receiver, std::vector<Value>& args);

/// Activates a block object with the given arguments.
Value call_block(Runtime& rt, ObjectHandle block, std::vector<Value> args);

Value eval_expr(Runtime& rt, const script::Expr& expr, const std::shared_ptr<Env>& env);

} // namespace ghost
