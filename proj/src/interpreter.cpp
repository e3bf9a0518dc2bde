#include "ghost/interpreter.hpp"

#include "ghost/dispatch.hpp"

namespace ghost {

namespace {

struct BlockReturnSignal {
    Value value;
};

Value eval_sequence(Runtime& rt, const std::vector<script::ExprPtr>& statements,
                    const std::shared_ptr<Env>& env, Value fallback) {
    Value last = fallback;
    for (const auto& stmt : statements)
        last = eval_expr(rt, *stmt, env);
    return last;
}

Value eval_send(Runtime& rt, const script::Expr& expr, const std::shared_ptr<Env>& env) {
    std::vector<Value> args;
    args.reserve(expr.arguments.size());

    bool super_send = expr.receiver && expr.receiver->type == script::Expr::Type::super_ref;
    Value receiver;
    if (super_send) {
        receiver = env->self;
        if (!env->defining_class.valid())
            raise(ErrorKind::fatal, "super send outside a method body", expr.line, expr.column);
    } else {
        receiver = eval_expr(rt, *expr.receiver, env);
    }
    for (const auto& arg : expr.arguments)
        args.push_back(eval_expr(rt, *arg, env));

    if (super_send) {
        Value super = rt.obj(env->defining_class).slots.size() >= 2
                          ? rt.obj(env->defining_class).slots[0]
                          : Value::nil();
        if (!super.is_reference())
            raise(ErrorKind::does_not_understand,
                  "super send from a rootless class: " + expr.text, expr.line, expr.column);
        return send_from(rt, receiver, expr.text, std::move(args), super.as_reference());
    }
    return send(rt, receiver, expr.text, std::move(args));
}

} // namespace

Value eval_expr(Runtime& rt, const script::Expr& expr, const std::shared_ptr<Env>& env) {
    using Type = script::Expr::Type;
    switch (expr.type) {
    case Type::int_literal: return Value::integer(expr.int_value);
    case Type::string_literal: return Value::ref(rt.make_string(expr.text));
    case Type::symbol_literal: return Value::ref(rt.intern(expr.text));
    case Type::true_literal: return Value::ref(rt.wk.true_obj);
    case Type::false_literal: return Value::ref(rt.wk.false_obj);
    case Type::nil_literal: return Value::nil();
    case Type::super_ref:
        raise(ErrorKind::parse, "super is only valid as a message receiver", expr.line,
              expr.column);
    case Type::variable: {
        if (expr.text == "self") return env->self;
        if (Value* local = env->find_local(expr.text)) return *local;
        if (env->ivars) {
            auto it = env->ivars->find(expr.text);
            if (it != env->ivars->end()) return rt.slot_read(env->self, it->second);
        }
        if (rt.has_global(expr.text)) return rt.global(expr.text);
        raise(ErrorKind::unbound_variable, "unbound variable: " + expr.text, expr.line,
              expr.column);
    }
    case Type::assignment: {
        Value v = eval_expr(rt, *expr.receiver, env);
        if (Value* local = env->find_local(expr.text)) {
            *local = v;
            return v;
        }
        if (env->ivars) {
            auto it = env->ivars->find(expr.text);
            if (it != env->ivars->end()) {
                rt.slot_write(env->self, it->second, v);
                return v;
            }
        }
        // Workspace-style scripts create globals on first assignment.
        bool top = false;
        for (Env* e = env.get(); e; e = e->parent.get())
            if (e->top_level) top = true;
        if (top || rt.has_global(expr.text)) {
            rt.bind_global(expr.text, v);
            return v;
        }
        raise(ErrorKind::unbound_variable, "assignment to undeclared variable: " + expr.text,
              expr.line, expr.column);
    }
    case Type::unary_send:
    case Type::binary_send:
    case Type::keyword_send: return eval_send(rt, expr, env);
    case Type::block: {
        ObjectHandle h = rt.allocate_slotted(Value::ref(rt.wk.block_cls), 0);
        auto meta = std::make_unique<BlockMeta>();
        meta->params = expr.params;
        meta->temps = expr.temps;
        meta->body = expr.statements;
        meta->captured = env;
        meta->home_self = env->self;
        meta->defining_class = env->defining_class;
        rt.obj(h).block_meta = std::move(meta);
        return Value::ref(h);
    }
    case Type::ret: {
        Value v = expr.receiver ? eval_expr(rt, *expr.receiver, env) : env->self;
        throw BlockReturnSignal{v};
    }
    case Type::sequence: return eval_sequence(rt, expr.statements, env, Value::nil());
    }
    raise(ErrorKind::fatal, "unreachable expression type");
}

Value activate_compiled(Runtime& rt, MethodMeta& meta, Value receiver,
                        std::vector<Value>& args) {
    auto env = std::make_shared<Env>();
    env->self = receiver;
    env->defining_class = meta.defining_class;
    env->ivars = &meta.ivar_index;
    for (size_t i = 0; i < meta.params.size(); ++i)
        env->locals[meta.params[i]] = args[i];
    for (const auto& t : meta.temps)
        env->locals[t] = Value::nil();

    try {
        if (meta.body)
            eval_sequence(rt, meta.body->statements, env, Value::nil());
    } catch (BlockReturnSignal& signal) {
        return signal.value; // ^ at method level answers the value
    }
    return receiver; // falling off the end answers self
}

Value call_block(Runtime& rt, ObjectHandle block, std::vector<Value> args) {
    BlockMeta* meta = rt.obj(block).block_meta.get();
    if (!meta)
        raise(ErrorKind::invalid_activation, "value sent to a non-block object");
    if (args.size() != meta->params.size())
        raise(ErrorKind::arity, "block expects " + std::to_string(meta->params.size()) +
                                    " arguments, got " + std::to_string(args.size()));
    auto env = std::make_shared<Env>();
    env->parent = meta->captured;
    env->self = meta->home_self;
    env->defining_class = meta->defining_class;
    env->ivars = meta->captured ? meta->captured->ivars : nullptr;
    for (size_t i = 0; i < args.size(); ++i)
        env->locals[meta->params[i]] = args[i];
    for (const auto& t : meta->temps)
        env->locals[t] = Value::nil();

    try {
        Value last = Value::nil();
        for (const auto& stmt : meta->body)
            last = eval_expr(rt, *stmt, env);
        return last;
    } catch (BlockReturnSignal& signal) {
        return signal.value; // block-local return only
    }
}

} // namespace ghost
