#include "hoarith/capi.h"

#include "hoarith/arith_sem.hpp"
#include "hoarith/coding.hpp"
#include "hoarith/eval.hpp"
#include "hoarith/hoare.hpp"
#include "hoarith/interp.hpp"
#include "hoarith/korder.hpp"
#include "hoarith/parser.hpp"
#include "hoarith/printer.hpp"
#include "hoarith/sp.hpp"
#include "hoarith/syntax.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

using namespace hoarith;
using nlohmann::ordered_json;

struct ha_ctx {
    NameTable names;
    std::string err;
};

struct ha_program {
    StmtPtr s;
};
struct ha_formula {
    FormulaPtr f;
};
struct ha_derivation {
    DerivPtr d;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(ha_ctx* ctx, const std::string& msg) {
    if (ctx) ctx->err = msg;
    return 1;
}

int verdict_code(Verdict v) {
    switch (v) {
    case Verdict::True: return 0;
    case Verdict::False: return 1;
    default: return 2;
    }
}

State parse_state(ha_ctx* ctx, const char* text) {
    State s;
    std::string in = text ? text : "";
    std::size_t pos = 0;
    while (pos < in.size()) {
        std::size_t end = in.find(',', pos);
        if (end == std::string::npos) end = in.size();
        std::string item = in.substr(pos, end - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected name=value: " + item);
        auto strip = [](std::string t) {
            std::size_t b = t.find_first_not_of(" \t");
            std::size_t e = t.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::invalid_argument("empty state component");
            return t.substr(b, e - b + 1);
        };
        Var v = ctx->names.intern(strip(item.substr(0, eq)));
        s.set(v, nat_from_string(strip(item.substr(eq + 1))));
        pos = end + 1;
    }
    return s;
}

std::string print_state(ha_ctx* ctx, const State& s, const std::vector<Var>& xs) {
    std::string out;
    for (Var v : xs) {
        if (!out.empty()) out += " ";
        out += ctx->names.name_of(v) + "=" + nat_to_string(s.get(v));
    }
    return out;
}

std::vector<Var> tuple_for(const StmtPtr& s, const FormulaPtr& pre,
                           const FormulaPtr& post = nullptr) {
    std::set<Var> all;
    for (Var v : program_vars(s)) all.insert(v);
    if (pre)
        for (Var v : free_vars(pre)) all.insert(v);
    if (post)
        for (Var v : free_vars(post)) all.insert(v);
    return {all.begin(), all.end()};
}

Nat parse_bound(const char* bound) {
    return bound && *bound ? nat_from_string(bound) : Nat(64);
}

#define HA_TRY(ctx, ...)                           \
    try {                                          \
        __VA_ARGS__;                               \
        return 0;                                  \
    } catch (const std::exception& e) {            \
        return fail(ctx, e.what());                \
    }

} // namespace

ha_ctx* ha_ctx_new(void) { return new ha_ctx; }
void ha_ctx_free(ha_ctx* ctx) { delete ctx; }
const char* ha_last_error(const ha_ctx* ctx) { return ctx ? ctx->err.c_str() : ""; }

void ha_program_free(ha_program* p) { delete p; }
void ha_formula_free(ha_formula* f) { delete f; }
void ha_derivation_free(ha_derivation* d) { delete d; }
void ha_string_free(char* s) { std::free(s); }

int ha_parse_program(ha_ctx* ctx, const char* text, ha_program** out) {
    HA_TRY(ctx, { *out = new ha_program{parse_program(text ? text : "", &ctx->names)}; })
}

int ha_parse_formula(ha_ctx* ctx, const char* text, ha_formula** out) {
    HA_TRY(ctx, { *out = new ha_formula{parse_formula(text ? text : "", &ctx->names)}; })
}

int ha_render_program(ha_ctx* ctx, const ha_program* p, int format, char** out) {
    HA_TRY(ctx, {
        switch (format) {
        case 0: *out = dup_string(to_text(p->s, &ctx->names)); break;
        case 1: *out = dup_string(to_sexpr(p->s, &ctx->names)); break;
        case 2: *out = dup_string(to_json(p->s, &ctx->names)); break;
        default: throw std::invalid_argument("unsupported program format");
        }
    })
}

int ha_render_formula(ha_ctx* ctx, const ha_formula* f, int format, char** out) {
    HA_TRY(ctx, {
        switch (format) {
        case 0: *out = dup_string(to_text(f->f, &ctx->names)); break;
        case 1: *out = dup_string(to_sexpr(f->f, &ctx->names)); break;
        case 2: *out = dup_string(to_json(f->f, &ctx->names)); break;
        case 3: *out = dup_string(formula_to_smt2(f->f, &ctx->names)); break;
        default: throw std::invalid_argument("unsupported formula format");
        }
    })
}

int ha_run(ha_ctx* ctx, const ha_program* p, const char* input,
           unsigned long long fuel, int* verdict, char** final_state) {
    HA_TRY(ctx, {
        State s = parse_state(ctx, input);
        ExecOutcome out = exec(p->s, s, fuel);
        *verdict = out.terminated ? 0 : 2;
        std::vector<Var> xs = tuple_for(p->s, nullptr);
        *final_state = dup_string(print_state(ctx, out.state, xs));
    })
}

int ha_alpha(ha_ctx* ctx, const ha_program* p, ha_formula** out, char** vars_json) {
    HA_TRY(ctx, {
        std::vector<Var> xs = program_vars(p->s);
        FreshPool pool = pool_above({}, {p->s}, xs);
        std::vector<Var> ys = pool.fresh_n(xs.size());
        AlphaResult r = alpha(p->s, xs, ys);
        *out = new ha_formula{r.formula};
        if (vars_json) {
            ordered_json j;
            for (Var v : xs) j["in"].push_back(ctx->names.name_of(v));
            for (Var v : ys) j["out"].push_back(ctx->names.name_of(v));
            *vars_json = dup_string(j.dump());
        }
    })
}

int ha_sp(ha_ctx* ctx, const ha_program* p, const ha_formula* pre, ha_formula** out) {
    HA_TRY(ctx, { *out = new ha_formula{sp(pre->f, p->s, tuple_for(p->s, pre->f))}; })
}

int ha_separation_rhs(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                      ha_formula** out) {
    HA_TRY(ctx, {
        *out = new ha_formula{separation_rhs(pre->f, p->s, tuple_for(p->s, pre->f))};
    })
}

int ha_eval_formula(ha_ctx* ctx, const ha_formula* f, const char* state,
                    const char* bound, int* verdict) {
    HA_TRY(ctx, {
        *verdict = verdict_code(eval_formula(f->f, parse_state(ctx, state), parse_bound(bound)));
    })
}

int ha_check_triple(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                    const ha_formula* post, unsigned long long box,
                    unsigned long long fuel, const char* bound, int* verdict,
                    char** counterexample) {
    HA_TRY(ctx, {
        std::vector<Var> xs = tuple_for(p->s, pre->f, post->f);
        Triple t{pre->f, p->s, post->f};
        TripleVerdict r = check_triple_bounded(t, xs, Nat(static_cast<unsigned long>(box)), fuel, parse_bound(bound));
        *verdict = verdict_code(r.verdict);
        if (counterexample)
            *counterexample = r.counterexample
                                  ? dup_string(print_state(ctx, *r.counterexample, xs))
                                  : dup_string("");
    })
}

int ha_check_separation(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                        unsigned long long box, unsigned long long fuel,
                        const char* bound_s, int* verdict, char** report_json) {
    HA_TRY(ctx, {
        std::vector<Var> xs = tuple_for(p->s, pre->f);
        Nat boxN(static_cast<unsigned long>(box));
        Nat bound = parse_bound(bound_s);
        FormulaPtr spf = sp(pre->f, p->s, xs);
        FormulaPtr rhs = separation_rhs(pre->f, p->s, xs);
        // execution oracle: final states reachable from box states where
        // the precondition definitely holds
        std::set<std::vector<std::string>> reachable;
        bool oracle_partial = false;
        std::vector<Nat> cur(xs.size(), 0);
        auto advance = [&](std::vector<Nat>& c) {
            std::size_t i = 0;
            for (; i < c.size(); ++i) {
                if (c[i] < boxN) { ++c[i]; break; }
                c[i] = 0;
            }
            return i < c.size();
        };
        auto key_of = [&](const State& s) {
            std::vector<std::string> k;
            for (Var v : xs) k.push_back(nat_to_string(s.get(v)));
            return k;
        };
        do {
            State s;
            for (std::size_t i = 0; i < xs.size(); ++i) s.set(xs[i], cur[i]);
            Verdict vp = eval_formula(pre->f, s, bound);
            if (vp == Verdict::Unknown) oracle_partial = true;
            if (vp != Verdict::True) continue;
            ExecOutcome out = exec(p->s, s, fuel);
            if (!out.terminated) { oracle_partial = true; continue; }
            reachable.insert(key_of(out.state));
        } while (advance(cur));

        unsigned long total = 0, unknown_sp = 0, unknown_rhs = 0, mismatches = 0;
        ordered_json detail = ordered_json::array();
        cur.assign(xs.size(), 0);
        do {
            State s;
            for (std::size_t i = 0; i < xs.size(); ++i) s.set(xs[i], cur[i]);
            ++total;
            Verdict vs = eval_formula(spf, s, bound);
            Verdict vr = eval_formula(rhs, s, bound);
            if (vs == Verdict::Unknown) ++unknown_sp;
            if (vr == Verdict::Unknown) ++unknown_rhs;
            bool oracle = reachable.count(key_of(s)) > 0;
            bool bad = (vs != Verdict::Unknown && vr != Verdict::Unknown && vs != vr) ||
                       (vs == Verdict::False && oracle) || (vr == Verdict::False && oracle);
            if (bad && detail.size() < 20) {
                detail.push_back({{"state", print_state(ctx, s, xs)},
                                  {"sp", verdict_name(vs)},
                                  {"relational", verdict_name(vr)},
                                  {"reachable", oracle}});
            }
            if (bad) ++mismatches;
        } while (advance(cur));

        ordered_json rep{{"states", total},
                         {"mismatches", mismatches},
                         {"unknown_sp", unknown_sp},
                         {"unknown_relational", unknown_rhs},
                         {"oracle_partial", oracle_partial},
                         {"disagreements", detail}};
        if (report_json) *report_json = dup_string(rep.dump(2));
        *verdict = mismatches == 0 ? 0 : 1;
    })
}

int ha_prove_sp(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                ha_derivation** out) {
    HA_TRY(ctx, {
        *out = new ha_derivation{
            generate_sp_derivation(pre->f, p->s, tuple_for(p->s, pre->f))};
    })
}

int ha_derivation_to_json(ha_ctx* ctx, const ha_derivation* d, char** out) {
    HA_TRY(ctx, { *out = dup_string(derivation_to_json(d->d, &ctx->names)); })
}

int ha_derivation_from_json(ha_ctx* ctx, const char* text, ha_derivation** out) {
    HA_TRY(ctx, {
        *out = new ha_derivation{derivation_from_json(text ? text : "", &ctx->names)};
    })
}

int ha_check_derivation(ha_ctx* ctx, const ha_derivation* d, const char* bound,
                        int* status, char** detail_json) {
    HA_TRY(ctx, {
        CheckResult r = check_derivation(d->d, parse_bound(bound));
        switch (r.status) {
        case CheckStatus::Valid: *status = 0; break;
        case CheckStatus::Invalid: *status = 1; break;
        default: *status = 2; break;
        }
        if (detail_json) {
            ordered_json j;
            j["status"] = *status == 0 ? "valid"
                          : *status == 1 ? "invalid"
                                         : "valid modulo obligations";
            if (!r.reason.empty()) j["reason"] = r.reason;
            if (r.conclusion) {
                j["pre"] = to_text(r.conclusion->pre, &ctx->names);
                j["program"] = to_text(r.conclusion->prog, &ctx->names);
                j["post"] = to_text(r.conclusion->post, &ctx->names);
            }
            j["residual"] = ordered_json::array();
            for (const auto& o : r.residual)
                j["residual"].push_back({{"origin", o.origin.empty() ? "root" : o.origin},
                                         {"formula", to_text(o.formula, &ctx->names)}});
            *detail_json = dup_string(j.dump(2));
        }
    })
}

int ha_obligation_count(ha_ctx* ctx, const ha_derivation* d, unsigned long* count) {
    HA_TRY(ctx, { *count = collect_obligations(d->d).size(); })
}

int ha_obligation_smt2(ha_ctx* ctx, const ha_derivation* d, unsigned long index,
                       char** out) {
    HA_TRY(ctx, {
        auto obls = collect_obligations(d->d);
        if (index >= obls.size()) throw std::out_of_range("obligation index out of range");
        *out = dup_string(obligation_to_smt2(obls[index], &ctx->names));
    })
}

int ha_encode_seq(ha_ctx* ctx, const char* numbers, char** code) {
    HA_TRY(ctx, {
        std::vector<Nat> xs;
        std::string in = numbers ? numbers : "";
        std::size_t pos = 0;
        while (pos <= in.size() && !in.empty()) {
            std::size_t end = in.find(',', pos);
            if (end == std::string::npos) end = in.size();
            std::string item = in.substr(pos, end - pos);
            std::size_t b = item.find_first_not_of(" \t");
            std::size_t e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::invalid_argument("empty sequence entry");
            xs.push_back(nat_from_string(item.substr(b, e - b + 1)));
            pos = end + 1;
            if (end == in.size()) break;
        }
        if (xs.empty()) throw std::invalid_argument("empty sequence");
        *code = dup_string(nat_to_string(seq_encode(xs)));
    })
}

int ha_seq_elem(ha_ctx* ctx, const char* code, const char* index, char** element) {
    HA_TRY(ctx, {
        *element = dup_string(
            nat_to_string(seq_elem(nat_from_string(code), nat_from_string(index))));
    })
}

int ha_korder_cmp(ha_ctx* ctx, const char* a, const char* b, int* cmp) {
    HA_TRY(ctx, {
        KElem u = k_parse(a), v = k_parse(b);
        *cmp = k_less(u, v) ? -1 : (k_less(v, u) ? 1 : 0);
    })
}
