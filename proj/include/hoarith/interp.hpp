#ifndef HOARITH_INTERP_HPP
#define HOARITH_INTERP_HPP

#include "hoarith/nat.hpp"
#include "hoarith/syntax.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hoarith {

// Total state over the naturals; unmentioned variables are 0.
class State {
public:
    State() = default;
    explicit State(std::map<Var, Nat> vals) : vals_(std::move(vals)) {}

    Nat get(Var v) const {
        auto it = vals_.find(v);
        return it == vals_.end() ? Nat(0) : it->second;
    }
    State with(Var v, Nat n) const {
        State s = *this;
        if (n == 0) s.vals_.erase(v); else s.vals_[v] = std::move(n);
        return s;
    }
    void set(Var v, Nat n) {
        if (n == 0) vals_.erase(v); else vals_[v] = std::move(n);
    }
    const std::map<Var, Nat>& entries() const { return vals_; }
    bool operator==(const State& o) const { return vals_ == o.vals_; }

private:
    std::map<Var, Nat> vals_;  // invariant: no stored zero
};

struct ExecOutcome {
    bool terminated = false;
    State state;
    unsigned long long steps = 0;  // loop-body entries consumed
};

Nat eval_expr(const ExprPtr& e, const State& s);
bool holds(const BExprPtr& b, const State& s);

// Fuel bounds the number of loop-body entries across the whole run.
ExecOutcome exec(const StmtPtr& stmt, const State& s, unsigned long long fuel);

// Runs stmt from the state mapping xs to args (everything else 0) and
// projects the final state onto xs. nullopt means out of fuel.
std::optional<std::vector<Nat>> run_function(const StmtPtr& stmt,
                                             const std::vector<Var>& xs,
                                             const std::vector<Nat>& args,
                                             unsigned long long fuel);

// States at the top of the given while loop, before each guard test and
// once after the guard goes false. Empty when the run exhausts fuel or the
// loop node is never reached.
std::vector<State> loop_trace(const StmtPtr& program, const StmtPtr& loop,
                              const State& s, unsigned long long fuel);

} // namespace hoarith

#endif
