#include "hoarith/hoare.hpp"

#include "hoarith/printer.hpp"
#include "hoarith/sp.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace hoarith {

namespace {

DerivPtr mk(Derivation d) { return std::make_shared<Derivation>(std::move(d)); }

} // namespace

DerivPtr d_assign(FormulaPtr post, Var x, ExprPtr e) {
    Derivation d;
    d.kind = DKind::AssignAxiom;
    d.post = std::move(post);
    d.target = x;
    d.value = std::move(e);
    return mk(std::move(d));
}

DerivPtr d_comp(DerivPtr left, DerivPtr right, FormulaPtr mid) {
    Derivation d;
    d.kind = DKind::Comp;
    d.d1 = std::move(left);
    d.d2 = std::move(right);
    d.mid = std::move(mid);
    return mk(std::move(d));
}

DerivPtr d_cond(DerivPtr then_d, DerivPtr else_d) {
    Derivation d;
    d.kind = DKind::Cond;
    d.d1 = std::move(then_d);
    d.d2 = std::move(else_d);
    return mk(std::move(d));
}

DerivPtr d_iter(DerivPtr body_d) {
    Derivation d;
    d.kind = DKind::Iter;
    d.d1 = std::move(body_d);
    return mk(std::move(d));
}

DerivPtr d_conseq(FormulaPtr pre, DerivPtr inner, FormulaPtr post) {
    Derivation d;
    d.kind = DKind::Conseq;
    d.new_pre = std::move(pre);
    d.d1 = std::move(inner);
    d.new_post = std::move(post);
    return mk(std::move(d));
}

namespace {

// Quantifier-free formula back into a guard; empty on quantifiers.
BExprPtr formula_to_bexpr(const FormulaPtr& f) {
    switch (f->kind) {
    case FormulaKind::Atom: return f->atom;
    case FormulaKind::Not: {
        auto a = formula_to_bexpr(f->f1);
        return a ? bexpr::bnot(a) : nullptr;
    }
    case FormulaKind::Imp:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff: {
        auto a = formula_to_bexpr(f->f1);
        auto b = formula_to_bexpr(f->f2);
        if (!a || !b) return nullptr;
        switch (f->kind) {
        case FormulaKind::Imp: return bexpr::imp(a, b);
        case FormulaKind::And: return bexpr::band(a, b);
        case FormulaKind::Or: return bexpr::bor(a, b);
        default: return bexpr::band(bexpr::imp(a, b), bexpr::imp(b, a));
        }
    }
    default: return nullptr;
    }
}

// A conditional/iteration child precondition has the shape p /\ b (or
// p /\ ~b); recover p and the guard.
struct GuardedPre {
    FormulaPtr p;
    BExprPtr guard;
};

GuardedPre split_guarded(const FormulaPtr& f, bool negated, const std::string& path) {
    if (f->kind != FormulaKind::And)
        throw DerivError("child precondition is not of the form p /\\ guard", path);
    FormulaPtr g = f->f2;
    if (negated) {
        if (g->kind != FormulaKind::Not)
            throw DerivError("else-branch precondition lacks a negated guard", path);
        g = g->f1;
    }
    BExprPtr b = formula_to_bexpr(g);
    if (!b) throw DerivError("guard position holds a quantified formula", path);
    return {f->f1, b};
}

struct RawObligation {
    FormulaPtr lhs, rhs;  // lhs -> rhs, not yet closed
    std::string origin;
};

Triple conclude(const DerivPtr& d, const std::string& path,
                std::vector<RawObligation>* obls) {
    if (!d) throw DerivError("missing derivation node", path);
    switch (d->kind) {
    case DKind::AssignAxiom: {
        if (!d->post || !d->value) throw DerivError("incomplete assignment axiom", path);
        Subst sigma{{d->target, d->value}};
        return {substitute(d->post, sigma), stmt::assign(d->target, d->value), d->post};
    }
    case DKind::Comp: {
        Triple l = conclude(d->d1, path + ".l", obls);
        Triple r = conclude(d->d2, path + ".r", obls);
        if (!d->mid) throw DerivError("composition lacks a middle assertion", path);
        if (!alpha_eq(l.post, d->mid))
            throw DerivError("left postcondition does not match middle assertion", path);
        if (!alpha_eq(r.pre, d->mid))
            throw DerivError("right precondition does not match middle assertion", path);
        return {l.pre, stmt::seq(l.prog, r.prog), r.post};
    }
    case DKind::Cond: {
        Triple t = conclude(d->d1, path + ".t", obls);
        Triple e = conclude(d->d2, path + ".e", obls);
        GuardedPre gt = split_guarded(t.pre, false, path);
        GuardedPre ge = split_guarded(e.pre, true, path);
        if (!alpha_eq(gt.p, ge.p))
            throw DerivError("branch preconditions disagree", path);
        if (!equal(gt.guard, ge.guard))
            throw DerivError("branch guards disagree", path);
        if (!alpha_eq(t.post, e.post))
            throw DerivError("branch postconditions disagree", path);
        return {gt.p, stmt::ifte(gt.guard, t.prog, e.prog), t.post};
    }
    case DKind::Iter: {
        Triple b = conclude(d->d1, path + ".b", obls);
        GuardedPre g = split_guarded(b.pre, false, path);
        if (!alpha_eq(g.p, b.post))
            throw DerivError("loop body does not preserve the invariant assertion", path);
        return {g.p, stmt::wloop(g.guard, b.prog),
                fml::fand(g.p, fml::fnot(fml::atom(g.guard)))};
    }
    case DKind::Conseq: {
        Triple c = conclude(d->d1, path + ".i", obls);
        if (!d->new_pre || !d->new_post) throw DerivError("incomplete consequence node", path);
        if (obls) {
            obls->push_back({d->new_pre, c.pre, path + ":pre"});
            obls->push_back({c.post, d->new_post, path + ":post"});
        }
        return {d->new_pre, c.prog, d->new_post};
    }
    }
    throw DerivError("corrupt node tag", path);
}

void and_spine(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == FormulaKind::And) {
        and_spine(f->f1, out);
        and_spine(f->f2, out);
    } else {
        out.push_back(f);
    }
}

// Structural matching of a pattern containing block variables against a
// ground term; bindings found are candidate existential witnesses. Any
// binding is safe because the conjuncts are re-verified under it.
bool match_expr(const ExprPtr& pat, const ExprPtr& ground, const std::set<Var>& block,
                Subst& sigma) {
    if (pat->kind == ExprKind::Variable && block.count(pat->var)) {
        auto it = sigma.find(pat->var);
        if (it != sigma.end()) return equal(it->second, ground);
        sigma[pat->var] = ground;
        return true;
    }
    if (pat->kind != ground->kind) return false;
    switch (pat->kind) {
    case ExprKind::Zero:
    case ExprKind::One: return true;
    case ExprKind::Numeral: return pat->value == ground->value;
    case ExprKind::Variable: return pat->var == ground->var;
    case ExprKind::Add:
    case ExprKind::Mul:
        return match_expr(pat->lhs, ground->lhs, block, sigma) &&
               match_expr(pat->rhs, ground->rhs, block, sigma);
    }
    return false;
}

// Sound syntactic discharge of lhs -> rhs: reflexivity, hypothesis lookup,
// disjunction introduction, conjunction splitting, and existential
// introduction with witnesses read off the equational conjuncts.
bool syn_implies(const FormulaPtr& lhs, const FormulaPtr& rhs, int depth) {
    if (depth <= 0) return false;
    if (alpha_eq(lhs, rhs)) return true;
    if (rhs->kind == FormulaKind::Atom && rhs->atom->kind == BExprKind::Eq &&
        equal(rhs->atom->el, rhs->atom->er))
        return true;
    std::vector<FormulaPtr> hyps;
    and_spine(lhs, hyps);
    for (const auto& h : hyps)
        if (alpha_eq(h, rhs)) return true;
    switch (rhs->kind) {
    case FormulaKind::And:
        return syn_implies(lhs, rhs->f1, depth - 1) && syn_implies(lhs, rhs->f2, depth - 1);
    case FormulaKind::Or:
        return syn_implies(lhs, rhs->f1, depth - 1) || syn_implies(lhs, rhs->f2, depth - 1);
    case FormulaKind::Exists: {
        std::vector<Var> block;
        FormulaPtr body = rhs;
        while (body->kind == FormulaKind::Exists) {
            block.push_back(body->binder);
            body = body->f1;
        }
        std::vector<FormulaPtr> conjs;
        and_spine(body, conjs);
        std::set<Var> blockset(block.begin(), block.end());
        auto block_free = [&](const ExprPtr& t) {
            for (Var v : free_vars(t))
                if (blockset.count(v)) return false;
            return true;
        };
        Subst sigma;
        for (const auto& c : conjs) {
            if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Eq) continue;
            const auto& a = c->atom;
            for (const ExprPtr* side : {&a->el, &a->er}) {
                const ExprPtr& other = (side == &a->el) ? a->er : a->el;
                if ((*side)->kind == ExprKind::Variable && blockset.count((*side)->var) &&
                    !sigma.count((*side)->var) && block_free(other))
                    sigma[(*side)->var] = other;
            }
        }
        // Remaining witnesses by structural matching of the block-var side of
        // an equation against its ground side.
        if (sigma.size() != blockset.size())
            for (const auto& c : conjs) {
                if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Eq) continue;
                const auto& a = c->atom;
                for (const ExprPtr* side : {&a->el, &a->er}) {
                    const ExprPtr& other = (side == &a->el) ? a->er : a->el;
                    if (!block_free(other) || block_free(*side)) continue;
                    Subst trial = sigma;
                    if (match_expr(*side, other, blockset, trial)) sigma = std::move(trial);
                }
            }
        if (sigma.size() != blockset.size()) return false;
        for (const auto& c : conjs)
            if (!syn_implies(lhs, substitute(c, sigma), depth - 1)) return false;
        return true;
    }
    default:
        return false;
    }
}

} // namespace

Triple conclusion_of(const DerivPtr& d) { return conclude(d, "", nullptr); }

FormulaPtr universal_closure(const FormulaPtr& f) {
    std::set<Var> fv = free_vars(f);
    FormulaPtr out = f;
    for (auto it = fv.rbegin(); it != fv.rend(); ++it) out = fml::forall(*it, out);
    return out;
}

CheckResult check_derivation(const DerivPtr& d, const Nat& oracle_bound) {
    CheckResult res;
    std::vector<RawObligation> raw;
    try {
        res.conclusion = conclude(d, "", &raw);
    } catch (const DerivError& e) {
        res.status = CheckStatus::Invalid;
        res.reason = std::string(e.what()) + " (at node '" + e.path + "')";
        return res;
    }
    for (const auto& o : raw) {
        if (syn_implies(o.lhs, o.rhs, 8)) continue;
        FormulaPtr closed = universal_closure(fml::imp(o.lhs, o.rhs));
        Verdict v = eval_formula(closed, State(), oracle_bound);
        if (v == Verdict::False) {
            res.status = CheckStatus::Invalid;
            res.reason = "consequence obligation is false over the naturals (at node '" +
                         o.origin + "')";
            res.residual.clear();
            return res;
        }
        if (v == Verdict::Unknown) res.residual.push_back({closed, o.origin});
    }
    res.status = res.residual.empty() ? CheckStatus::Valid : CheckStatus::ValidModuloObligations;
    return res;
}

std::vector<Obligation> collect_obligations(const DerivPtr& d) {
    std::vector<RawObligation> raw;
    conclude(d, "", &raw);
    std::vector<Obligation> out;
    for (const auto& o : raw)
        out.push_back({universal_closure(fml::imp(o.lhs, o.rhs)), o.origin});
    return out;
}

namespace {

// Extra bound variables for sub-derivations live in disjoint high regions,
// so the main pool keeps producing exactly the indices sp() would.
struct GenCtx {
    std::uint32_t next_base;
    FreshPool take() {
        FreshPool p(next_base);
        if (next_base > 4000000000u) throw std::logic_error("variable region exhausted");
        next_base += 1000000;
        return p;
    }
};

struct Gen {
    DerivPtr d;
    FormulaPtr post;
};

Gen gen(const FormulaPtr& p, const StmtPtr& S, const std::vector<Var>& xs,
        FreshPool& pool, GenCtx& ctx) {
    switch (S->kind) {
    case StmtKind::Assign: {
        FormulaPtr q = sp_formula(p, S, xs, pool);
        // backward axiom plus consequence: p -> q(e/x) is the forward step
        DerivPtr ax = d_assign(q, S->target, S->value);
        return {d_conseq(p, ax, q), q};
    }
    case StmtKind::Seq: {
        Gen l = gen(p, S->s1, xs, pool, ctx);
        Gen r = gen(l.post, S->s2, xs, pool, ctx);
        return {d_comp(l.d, r.d, l.post), r.post};
    }
    case StmtKind::If: {
        FormulaPtr b = fml::atom(S->guard);
        FormulaPtr pre_t = fml::fand(p, b);
        FormulaPtr pre_e = fml::fand(p, fml::fnot(b));
        Gen t = gen(pre_t, S->s1, xs, pool, ctx);
        Gen e = gen(pre_e, S->s2, xs, pool, ctx);
        FormulaPtr q = fml::f_or(t.post, e.post);
        DerivPtr dt = d_conseq(pre_t, t.d, q);
        DerivPtr de = d_conseq(pre_e, e.d, q);
        return {d_cond(dt, de), q};
    }
    case StmtKind::While: {
        FormulaPtr r = loop_invariant(p, S->guard, S->s1, xs, pool);
        FormulaPtr q = fml::fand(r, fml::fnot(fml::atom(S->guard)));
        FreshPool body_pool = ctx.take();
        Gen body = gen(fml::fand(r, fml::atom(S->guard)), S->s1, xs, body_pool, ctx);
        DerivPtr body_c = d_conseq(fml::fand(r, fml::atom(S->guard)), body.d, r);
        return {d_conseq(p, d_iter(body_c), q), q};
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

DerivPtr generate_sp_derivation(const FormulaPtr& p, const StmtPtr& S,
                                const std::vector<Var>& xs) {
    for (Var v : program_vars(S))
        if (std::find(xs.begin(), xs.end(), v) == xs.end())
            throw std::invalid_argument("generate_sp_derivation: program variable outside xs");
    FreshPool pool = pool_above({p}, {S}, xs);
    GenCtx ctx{((pool.next_index() / 1000000) + 1) * 1000000};
    return gen(p, S, xs, pool, ctx).d;
}

TripleVerdict check_triple_bounded(const Triple& t, const std::vector<Var>& xs,
                                   const Nat& box, unsigned long long fuel,
                                   const Nat& bound) {
    bool unknown = false;
    std::vector<Nat> cur(xs.size(), 0);
    while (true) {
        State s;
        for (std::size_t i = 0; i < xs.size(); ++i) s.set(xs[i], cur[i]);
        Verdict vp = eval_formula(t.pre, s, bound);
        if (vp == Verdict::Unknown) unknown = true;
        if (vp == Verdict::True) {
            ExecOutcome out = exec(t.prog, s, fuel);
            if (!out.terminated) {
                unknown = true;
            } else {
                Verdict vq = eval_formula(t.post, out.state, bound);
                if (vq == Verdict::False) return {Verdict::False, s};
                if (vq == Verdict::Unknown) unknown = true;
            }
        }
        std::size_t i = 0;
        for (; i < xs.size(); ++i) {
            if (cur[i] < box) { ++cur[i]; break; }
            cur[i] = 0;
        }
        if (i == xs.size()) break;
    }
    return {unknown ? Verdict::Unknown : Verdict::True, std::nullopt};
}

std::vector<FormulaPtr> pa_base_axioms() {
    using namespace expr;
    Var x{0}, y{1};
    ExprPtr X = var(x), Y = var(y);
    auto all1 = [&](FormulaPtr f) { return fml::forall(x, f); };
    auto all2 = [&](FormulaPtr f) { return fml::forall(x, fml::forall(y, f)); };
    return {
        all1(fml::fnot(fml::eq(add(X, one()), zero()))),
        all2(fml::imp(fml::eq(add(X, one()), add(Y, one())), fml::eq(X, Y))),
        all1(fml::eq(add(X, zero()), X)),
        all2(fml::eq(add(X, add(Y, one())), add(add(X, Y), one()))),
        all1(fml::eq(mul(X, zero()), zero())),
        all2(fml::eq(mul(X, add(Y, one())), add(mul(X, Y), X))),
    };
}

FormulaPtr instantiate_induction(const FormulaPtr& phi, Var x) {
    using namespace expr;
    FormulaPtr base = substitute(phi, Subst{{x, zero()}});
    FormulaPtr step = fml::forall(
        x, fml::imp(phi, substitute(phi, Subst{{x, add(var(x), one())}})));
    FormulaPtr inst = fml::imp(fml::fand(base, step), fml::forall(x, phi));
    return universal_closure(inst);
}

// ---- serialization ----

namespace {

using nlohmann::ordered_json;

std::string vname(Var v, const NameTable* names) {
    return names ? names->name_of(v) : "x" + std::to_string(v.index);
}

ordered_json deriv_json(const DerivPtr& d, const NameTable* names) {
    switch (d->kind) {
    case DKind::AssignAxiom:
        return {{"node", "AssignAxiom"},
                {"post", to_text(d->post, names)},
                {"x", vname(d->target, names)},
                {"e", to_text(d->value, names)}};
    case DKind::Comp:
        return {{"node", "Comp"},
                {"mid", to_text(d->mid, names)},
                {"left", deriv_json(d->d1, names)},
                {"right", deriv_json(d->d2, names)}};
    case DKind::Cond:
        return {{"node", "Cond"},
                {"then", deriv_json(d->d1, names)},
                {"else", deriv_json(d->d2, names)}};
    case DKind::Iter:
        return {{"node", "Iter"}, {"body", deriv_json(d->d1, names)}};
    case DKind::Conseq:
        return {{"node", "Conseq"},
                {"pre", to_text(d->new_pre, names)},
                {"post", to_text(d->new_post, names)},
                {"inner", deriv_json(d->d1, names)}};
    }
    throw std::logic_error("unreachable");
}

DerivPtr deriv_from(const ordered_json& j, NameTable* names) {
    if (!j.is_object() || !j.contains("node"))
        throw std::invalid_argument("derivation: malformed node");
    std::string tag = j.at("node").get<std::string>();
    auto fstr = [&](const char* key) {
        return parse_formula(j.at(key).get<std::string>(), names);
    };
    if (tag == "AssignAxiom") {
        Var x = names->intern(j.at("x").get<std::string>());
        return d_assign(fstr("post"), x, parse_expr(j.at("e").get<std::string>(), names));
    }
    if (tag == "Comp")
        return d_comp(deriv_from(j.at("left"), names), deriv_from(j.at("right"), names),
                      fstr("mid"));
    if (tag == "Cond")
        return d_cond(deriv_from(j.at("then"), names), deriv_from(j.at("else"), names));
    if (tag == "Iter") return d_iter(deriv_from(j.at("body"), names));
    if (tag == "Conseq")
        return d_conseq(fstr("pre"), deriv_from(j.at("inner"), names), fstr("post"));
    throw std::invalid_argument("derivation: unknown node tag '" + tag + "'");
}

} // namespace

std::string derivation_to_json(const DerivPtr& d, const NameTable* names) {
    return deriv_json(d, names).dump(2);
}

DerivPtr derivation_from_json(const std::string& text, NameTable* names) {
    ordered_json j = ordered_json::parse(text);
    NameTable local;
    return deriv_from(j, names ? names : &local);
}

std::string obligation_to_smt2(const Obligation& o, const NameTable* names) {
    std::string head = "; obligation at node '" + (o.origin.empty() ? "root" : o.origin) +
                       "'; unsat means the obligation holds\n";
    return head + formula_to_smt2(fml::fnot(o.formula), names);
}

} // namespace hoarith
