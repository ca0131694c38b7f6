#ifndef HOARITH_CAPI_H
#define HOARITH_CAPI_H

/* C interface to the library. All functions return 0 on success and a
 * nonzero error code on failure; the failure message is kept on the context
 * and read with ha_last_error. Strings returned through out-parameters are
 * heap-allocated and released with ha_string_free. Verdicts are 0 true,
 * 1 false, 2 unknown, matching the CLI exit-code convention. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ha_ctx ha_ctx;
typedef struct ha_program ha_program;
typedef struct ha_formula ha_formula;
typedef struct ha_derivation ha_derivation;

/* Variable names are interned per context, so programs and formulas parsed
 * on the same context agree about which variable is which. */
ha_ctx* ha_ctx_new(void);
void ha_ctx_free(ha_ctx* ctx);
const char* ha_last_error(const ha_ctx* ctx);

void ha_program_free(ha_program* p);
void ha_formula_free(ha_formula* f);
void ha_derivation_free(ha_derivation* d);
void ha_string_free(char* s);

int ha_parse_program(ha_ctx* ctx, const char* text, ha_program** out);
int ha_parse_formula(ha_ctx* ctx, const char* text, ha_formula** out);

/* format: 0 text, 1 s-expression, 2 json, 3 smt2 (formulas only) */
int ha_render_program(ha_ctx* ctx, const ha_program* p, int format, char** out);
int ha_render_formula(ha_ctx* ctx, const ha_formula* f, int format, char** out);

/* input is "x=3,y=5" (missing variables are 0); the final state comes back
 * in the same syntax. Verdict: 0 terminated, 2 out of fuel. */
int ha_run(ha_ctx* ctx, const ha_program* p, const char* input,
           unsigned long long fuel, int* verdict, char** final_state);

/* Relation formula over fresh output variables; vars_json reports the input
 * and output tuples. */
int ha_alpha(ha_ctx* ctx, const ha_program* p, ha_formula** out, char** vars_json);

int ha_sp(ha_ctx* ctx, const ha_program* p, const ha_formula* pre, ha_formula** out);
int ha_separation_rhs(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                      ha_formula** out);

/* state is in the ha_run input syntax; bound is a decimal numeral. */
int ha_eval_formula(ha_ctx* ctx, const ha_formula* f, const char* state,
                    const char* bound, int* verdict);

int ha_check_triple(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                    const ha_formula* post, unsigned long long box,
                    unsigned long long fuel, const char* bound, int* verdict,
                    char** counterexample);

/* Sweeps the box comparing the two postcondition constructions and the
 * execution oracle; the JSON report carries per-disagreement detail and the
 * unknown rate. Verdict: 0 consistent, 1 disagreement found. */
int ha_check_separation(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                        unsigned long long box, unsigned long long fuel,
                        const char* bound, int* verdict, char** report_json);

int ha_prove_sp(ha_ctx* ctx, const ha_program* p, const ha_formula* pre,
                ha_derivation** out);

int ha_derivation_to_json(ha_ctx* ctx, const ha_derivation* d, char** out);
int ha_derivation_from_json(ha_ctx* ctx, const char* text, ha_derivation** out);

/* status: 0 valid, 1 invalid, 2 valid modulo obligations. */
int ha_check_derivation(ha_ctx* ctx, const ha_derivation* d, const char* bound,
                        int* status, char** detail_json);

int ha_obligation_count(ha_ctx* ctx, const ha_derivation* d, unsigned long* count);
int ha_obligation_smt2(ha_ctx* ctx, const ha_derivation* d, unsigned long index,
                       char** out);

/* numbers is a comma-separated list of decimal naturals. */
int ha_encode_seq(ha_ctx* ctx, const char* numbers, char** code);
int ha_seq_elem(ha_ctx* ctx, const char* code, const char* index, char** element);

/* Elements as `n` or `(p/q, a)`. cmp: -1, 0, or 1. */
int ha_korder_cmp(ha_ctx* ctx, const char* a, const char* b, int* cmp);

#ifdef __cplusplus
}
#endif

#endif
