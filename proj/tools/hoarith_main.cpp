#include "hoarith/capi.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Exit codes: 0/1/2 mirror the verdicts of checking commands, 64 is a usage
// error.
constexpr int kUsage = 64;

struct Ctx {
    ha_ctx* c;
    Ctx() : c(ha_ctx_new()) {}
    ~Ctx() { ha_ctx_free(c); }
};

[[noreturn]] void die(ha_ctx* c) {
    std::cerr << "error: " << ha_last_error(c) << "\n";
    std::exit(1);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline text, or the contents of an existing .fml file.
std::string formula_text(const std::string& arg) {
    if (arg.size() > 4 && arg.substr(arg.size() - 4) == ".fml" &&
        std::filesystem::exists(arg))
        return slurp(arg);
    return arg;
}

int format_code(const std::string& name) {
    if (name == "text") return 0;
    if (name == "sexpr") return 1;
    if (name == "json") return 2;
    if (name == "smt2") return 3;
    std::cerr << "error: unknown output format '" << name << "'\n";
    std::exit(kUsage);
}

std::string default_bound() {
    const char* env = std::getenv("HOARITH_DEFAULT_BOUND");
    return env && *env ? env : "64";
}

ha_program* load_program(ha_ctx* c, const std::string& path) {
    ha_program* p = nullptr;
    if (ha_parse_program(c, slurp(path).c_str(), &p) != 0) die(c);
    return p;
}

ha_formula* load_formula(ha_ctx* c, const std::string& text) {
    ha_formula* f = nullptr;
    if (ha_parse_formula(c, formula_text(text).c_str(), &f) != 0) die(c);
    return f;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ha_string_free(s);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"strongest-postcondition toolkit for arithmetic while-programs"};
    app.require_subcommand(1);

    std::string file, pre_s = "0 = 0", post_s, input_s, out_fmt = "text", out_path;
    std::string bound_s = default_bound();
    unsigned long long fuel = 10000, box = 16;
    std::string elem_a, elem_b;

    auto add_bound = [&](CLI::App* cmd) {
        cmd->add_option("--bound", bound_s, "quantifier search bound (default 64)");
    };

    auto* parse = app.add_subcommand("parse", "parse and reprint a program or formula");
    parse->add_option("file", file, "input file (.whl or .fml)")->required();
    parse->add_option("--out", out_fmt, "text|sexpr|json|smt2");

    auto* run = app.add_subcommand("run", "execute a program");
    run->add_option("file", file)->required();
    run->add_option("--input", input_s, "initial state, e.g. x=3,y=5");
    run->add_option("--fuel", fuel, "loop-iteration budget");

    auto* alpha = app.add_subcommand("alpha", "input/output relation formula");
    alpha->add_option("file", file)->required();
    alpha->add_option("--out", out_fmt);
    bool show_vars = false;
    alpha->add_flag("--vars", show_vars, "also print the variable tuples");

    auto* spc = app.add_subcommand("sp", "strongest postcondition");
    spc->add_option("file", file)->required();
    spc->add_option("--pre", pre_s, "precondition");
    spc->add_option("--out", out_fmt);

    auto* ct = app.add_subcommand("check-triple", "bounded semantic triple check");
    ct->add_option("file", file)->required();
    ct->add_option("--pre", pre_s)->required();
    ct->add_option("--post", post_s)->required();
    ct->add_option("--box", box);
    ct->add_option("--fuel", fuel);
    add_bound(ct);

    auto* cs = app.add_subcommand("check-separation",
                                  "compare both postcondition constructions");
    cs->add_option("file", file)->required();
    cs->add_option("--pre", pre_s);
    cs->add_option("--box", box);
    cs->add_option("--fuel", fuel);
    add_bound(cs);

    auto* ps = app.add_subcommand("prove-sp", "derivation of {p} S {sp(p,S)}");
    ps->add_option("file", file)->required();
    ps->add_option("--pre", pre_s);
    ps->add_option("-o,--output", out_path, "write the derivation here");

    auto* cp = app.add_subcommand("check-proof", "check a derivation file");
    cp->add_option("file", file, "derivation (.deriv.json)")->required();
    add_bound(cp);

    auto* eo = app.add_subcommand("export-obligations", "obligations as SMT-LIB files");
    eo->add_option("file", file, "derivation (.deriv.json)")->required();
    std::string out_dir = ".";
    eo->add_option("--dir", out_dir, "output directory");

    auto* es = app.add_subcommand("encode-seq", "sequence code for a list of naturals");
    std::string numbers;
    es->add_option("numbers", numbers, "comma-separated naturals")->required();

    auto* se = app.add_subcommand("seq-elem", "element of a coded sequence");
    se->add_option("code", elem_a)->required();
    se->add_option("index", elem_b)->required();

    auto* ko = app.add_subcommand("korder", "nonstandard order demonstrator");
    auto* kc = ko->add_subcommand("cmp", "compare two order elements");
    kc->add_option("a", elem_a, "element: n or (p/q, a)")->required();
    kc->add_option("b", elem_b)->required();
    ko->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kUsage;
    }

    Ctx ctx;
    ha_ctx* c = ctx.c;

    if (*parse) {
        bool is_formula = file.size() > 4 && file.substr(file.size() - 4) == ".fml";
        char* s = nullptr;
        if (is_formula) {
            ha_formula* f = load_formula(c, file);
            if (ha_render_formula(c, f, format_code(out_fmt), &s) != 0) die(c);
            ha_formula_free(f);
        } else {
            ha_program* p = load_program(c, file);
            if (ha_render_program(c, p, format_code(out_fmt), &s) != 0) die(c);
            ha_program_free(p);
        }
        std::cout << take(s) << "\n";
        return 0;
    }
    if (*run) {
        ha_program* p = load_program(c, file);
        int v = 0;
        char* s = nullptr;
        if (ha_run(c, p, input_s.c_str(), fuel, &v, &s) != 0) die(c);
        ha_program_free(p);
        if (v == 2) {
            std::cerr << "out of fuel\n";
            return 2;
        }
        std::cout << take(s) << "\n";
        return 0;
    }
    if (*alpha) {
        ha_program* p = load_program(c, file);
        ha_formula* f = nullptr;
        char* vars = nullptr;
        if (ha_alpha(c, p, &f, &vars) != 0) die(c);
        char* s = nullptr;
        if (ha_render_formula(c, f, format_code(out_fmt), &s) != 0) die(c);
        if (show_vars) std::cout << take(vars) << "\n";
        else ha_string_free(vars);
        std::cout << take(s) << "\n";
        ha_formula_free(f);
        ha_program_free(p);
        return 0;
    }
    if (*spc) {
        ha_program* p = load_program(c, file);
        ha_formula* pre = load_formula(c, pre_s);
        ha_formula* f = nullptr;
        if (ha_sp(c, p, pre, &f) != 0) die(c);
        char* s = nullptr;
        if (ha_render_formula(c, f, format_code(out_fmt), &s) != 0) die(c);
        std::cout << take(s) << "\n";
        ha_formula_free(f);
        ha_formula_free(pre);
        ha_program_free(p);
        return 0;
    }
    if (*ct) {
        ha_program* p = load_program(c, file);
        ha_formula* pre = load_formula(c, pre_s);
        ha_formula* post = load_formula(c, post_s);
        int v = 0;
        char* cex = nullptr;
        if (ha_check_triple(c, p, pre, post, box, fuel, bound_s.c_str(), &v, &cex) != 0)
            die(c);
        std::string ce = take(cex);
        if (v == 1) std::cout << "counterexample: " << ce << "\n";
        else std::cout << (v == 0 ? "holds on the box" : "undecided on the box") << "\n";
        return v;
    }
    if (*cs) {
        ha_program* p = load_program(c, file);
        ha_formula* pre = load_formula(c, pre_s);
        int v = 0;
        char* rep = nullptr;
        if (ha_check_separation(c, p, pre, box, fuel, bound_s.c_str(), &v, &rep) != 0)
            die(c);
        std::cout << take(rep) << "\n";
        return v;
    }
    if (*ps) {
        ha_program* p = load_program(c, file);
        ha_formula* pre = load_formula(c, pre_s);
        ha_derivation* d = nullptr;
        if (ha_prove_sp(c, p, pre, &d) != 0) die(c);
        char* s = nullptr;
        if (ha_derivation_to_json(c, d, &s) != 0) die(c);
        std::string text = take(s);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            out << text << "\n";
        } else {
            std::cout << text << "\n";
        }
        ha_derivation_free(d);
        return 0;
    }
    if (*cp) {
        ha_derivation* d = nullptr;
        if (ha_derivation_from_json(c, slurp(file).c_str(), &d) != 0) die(c);
        int status = 0;
        char* detail = nullptr;
        if (ha_check_derivation(c, d, bound_s.c_str(), &status, &detail) != 0) die(c);
        std::cout << take(detail) << "\n";
        ha_derivation_free(d);
        return status;
    }
    if (*eo) {
        ha_derivation* d = nullptr;
        if (ha_derivation_from_json(c, slurp(file).c_str(), &d) != 0) die(c);
        unsigned long count = 0;
        if (ha_obligation_count(c, d, &count) != 0) die(c);
        for (unsigned long i = 0; i < count; ++i) {
            char* s = nullptr;
            if (ha_obligation_smt2(c, d, i, &s) != 0) die(c);
            std::string path = out_dir + "/obligation_" + std::to_string(i) + ".smt2";
            std::ofstream out(path);
            out << take(s);
            std::cout << path << "\n";
        }
        ha_derivation_free(d);
        return 0;
    }
    if (*es) {
        char* s = nullptr;
        if (ha_encode_seq(c, numbers.c_str(), &s) != 0) die(c);
        std::cout << take(s) << "\n";
        return 0;
    }
    if (*se) {
        char* s = nullptr;
        if (ha_seq_elem(c, elem_a.c_str(), elem_b.c_str(), &s) != 0) die(c);
        std::cout << take(s) << "\n";
        return 0;
    }
    if (*ko) {
        int cmp = 0;
        if (ha_korder_cmp(c, elem_a.c_str(), elem_b.c_str(), &cmp) != 0) die(c);
        std::cout << (cmp < 0 ? "<" : cmp > 0 ? ">" : "=") << "\n";
        return 0;
    }
    return kUsage;
}
