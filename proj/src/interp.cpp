#include "hoarith/interp.hpp"

#include <stdexcept>

namespace hoarith {

Nat eval_expr(const ExprPtr& e, const State& s) {
    switch (e->kind) {
    case ExprKind::Zero: return 0;
    case ExprKind::One: return 1;
    case ExprKind::Numeral: return e->value;
    case ExprKind::Variable: return s.get(e->var);
    case ExprKind::Add: return eval_expr(e->lhs, s) + eval_expr(e->rhs, s);
    case ExprKind::Mul: return eval_expr(e->lhs, s) * eval_expr(e->rhs, s);
    }
    throw std::logic_error("unreachable");
}

bool holds(const BExprPtr& b, const State& s) {
    switch (b->kind) {
    case BExprKind::Less: return eval_expr(b->el, s) < eval_expr(b->er, s);
    case BExprKind::Eq: return eval_expr(b->el, s) == eval_expr(b->er, s);
    case BExprKind::Not: return !holds(b->bl, s);
    case BExprKind::Imp: return !holds(b->bl, s) || holds(b->br, s);
    case BExprKind::And: return holds(b->bl, s) && holds(b->br, s);
    case BExprKind::Or: return holds(b->bl, s) || holds(b->br, s);
    }
    throw std::logic_error("unreachable");
}

namespace {

// Returns false when fuel runs out; steps counts loop-body entries so far.
bool exec_rec(const StmtPtr& stmt, State& s, unsigned long long fuel,
              unsigned long long& steps) {
    switch (stmt->kind) {
    case StmtKind::Assign:
        s.set(stmt->target, eval_expr(stmt->value, s));
        return true;
    case StmtKind::Seq:
        return exec_rec(stmt->s1, s, fuel, steps) && exec_rec(stmt->s2, s, fuel, steps);
    case StmtKind::If:
        return exec_rec(holds(stmt->guard, s) ? stmt->s1 : stmt->s2, s, fuel, steps);
    case StmtKind::While:
        while (holds(stmt->guard, s)) {
            if (steps >= fuel) return false;
            ++steps;
            if (!exec_rec(stmt->s1, s, fuel, steps)) return false;
        }
        return true;
    }
    throw std::logic_error("unreachable");
}

} // namespace

ExecOutcome exec(const StmtPtr& stmt, const State& s, unsigned long long fuel) {
    ExecOutcome out;
    out.state = s;
    out.terminated = exec_rec(stmt, out.state, fuel, out.steps);
    return out;
}

std::optional<std::vector<Nat>> run_function(const StmtPtr& stmt,
                                             const std::vector<Var>& xs,
                                             const std::vector<Nat>& args,
                                             unsigned long long fuel) {
    if (xs.size() != args.size()) throw std::invalid_argument("run_function: arity mismatch");
    State s;
    for (std::size_t i = 0; i < xs.size(); ++i) s.set(xs[i], args[i]);
    ExecOutcome out = exec(stmt, s, fuel);
    if (!out.terminated) return std::nullopt;
    std::vector<Nat> result;
    result.reserve(xs.size());
    for (Var v : xs) result.push_back(out.state.get(v));
    return result;
}

namespace {

bool trace_rec(const StmtPtr& stmt, const StmtPtr& loop, State& s,
               unsigned long long fuel, unsigned long long& steps,
               std::vector<State>& trace) {
    bool record = stmt == loop;  // node identity, not structural equality
    switch (stmt->kind) {
    case StmtKind::Assign:
        s.set(stmt->target, eval_expr(stmt->value, s));
        return true;
    case StmtKind::Seq:
        return trace_rec(stmt->s1, loop, s, fuel, steps, trace) &&
               trace_rec(stmt->s2, loop, s, fuel, steps, trace);
    case StmtKind::If:
        return trace_rec(holds(stmt->guard, s) ? stmt->s1 : stmt->s2, loop, s, fuel, steps, trace);
    case StmtKind::While:
        while (true) {
            if (record) trace.push_back(s);
            if (!holds(stmt->guard, s)) return true;
            if (steps >= fuel) return false;
            ++steps;
            if (!trace_rec(stmt->s1, loop, s, fuel, steps, trace)) return false;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

std::vector<State> loop_trace(const StmtPtr& program, const StmtPtr& loop,
                              const State& s, unsigned long long fuel) {
    std::vector<State> trace;
    State cur = s;
    unsigned long long steps = 0;
    if (!trace_rec(program, loop, cur, fuel, steps, trace)) return {};
    return trace;
}

} // namespace hoarith
