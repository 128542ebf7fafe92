// Command-line front end.
//
//   kls compute <object> ...   kl-poly, kl-basis, mc, smc, kl-class, kl-schubert,
//                              pairing, tiling, stabilizers, zelevinsky-operator
//   kls verify <suite> ...
//   kls cache show|clear|warm ...
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard refusal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kls/field.hpp"
#include "kls/grassmannian.hpp"
#include "kls/hecke.hpp"
#include "kls/localization.hpp"
#include "kls/twisted.hpp"
#include "kls/verify.hpp"

using namespace kls;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitGuard = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string type = "A";
    int rank = 2;
    int n = 0, d = 0;
    std::string mode = "exact";
    int points = 1;
    uint64_t seed = 1;
    std::string cache_dir;
    std::string format = "text";
    size_t hecke_guard = 720;
    size_t comb_guard = 5040;
    // compute
    std::string v, w, u, subset, lambda, policy = "largest_index", pairing = "kl";
    bool tilde = false;
    // verify
    unsigned threads = 0;
    int samples = 20;
    int recheck = 0;
    bool timing = false;
};

std::optional<fs::path> cache_dir(const Options& o) {
    if (!o.cache_dir.empty()) return fs::path(o.cache_dir);
    if (const char* env = std::getenv("KLS_CACHE_DIR"); env && *env) return fs::path(env);
    return std::nullopt;
}

bool grass_mode(const Options& o) { return o.n > 0; }

CartanData cartan(const Options& o) {
    if (grass_mode(o)) {
        if (o.d < 1 || o.d >= o.n) throw UsageError("--d must satisfy 1 <= d < n");
        return CartanData::type_A(o.n - 1);
    }
    if (o.rank < 1) throw UsageError("--rank must be positive");
    return CartanData::from_label(o.type + std::to_string(o.rank));
}

void add_group_options(CLI::App* app, Options& o) {
    app->add_option("--type", o.type, "Cartan type (A, B, C, D, G)");
    app->add_option("--rank", o.rank, "rank");
    app->add_option("--n", o.n, "Grassmannian: ambient dimension");
    app->add_option("--d", o.d, "Grassmannian: subspace dimension");
}

void add_run_options(CLI::App* app, Options& o) {
    app->add_option("--mode", o.mode, "exact or modp")->check(CLI::IsMember({"exact", "modp"}));
    app->add_option("--points", o.points, "number of evaluation points in modp mode")->check(CLI::PositiveNumber);
    app->add_option("--seed", o.seed, "seed of the first evaluation point");
    app->add_option("--cache-dir", o.cache_dir, "KL cache directory (default: $KLS_CACHE_DIR)");
    app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--hecke-guard", o.hecke_guard, "largest |W| for Hecke computations")->check(CLI::PositiveNumber);
    app->add_option("--comb-guard", o.comb_guard, "largest |W| for combinatorics")->check(CLI::PositiveNumber);
}

std::unique_ptr<WeylGroup> make_group(const Options& o, bool hecke) {
    std::unique_ptr<WeylGroup> W;
    try {
        W = std::make_unique<WeylGroup>(cartan(o), o.comb_guard + 1);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const UsageError*>(&e)) throw;
        throw verify::GuardError("group exceeds the combinatorics guard of " + std::to_string(o.comb_guard) + " elements");
    }
    if (hecke && W->size() > o.hecke_guard)
        throw verify::GuardError("|W| = " + std::to_string(W->size()) + " exceeds the Hecke guard of " + std::to_string(o.hecke_guard));
    return W;
}

Elem elem(const WeylGroup& W, const std::string& s, const char* flag) {
    if (s.empty()) throw UsageError(std::string("missing ") + flag);
    return W.parse(s);
}

Subset subset_for(const Options& o, const WeylGroup& W) {
    if (!o.subset.empty()) return parse_subset(o.subset, W.rank());
    if (grass_mode(o)) return grass::GrassData(o.n, o.d).J();
    return 0;
}

std::string group_label(const Options& o, const WeylGroup& W) {
    if (grass_mode(o)) return "Gr(" + std::to_string(o.d) + "," + std::to_string(o.n) + ")";
    return W.cartan().type_label;
}

json header(const Options& o, const WeylGroup* W, const std::string& object) {
    json j;
    j["format_version"] = verify::kFormatVersion;
    j["object"] = object;
    if (W) j["group"] = group_label(o, *W);
    if (grass_mode(o)) j["n"] = o.n, j["d"] = o.d;
    j["mode"] = o.mode;
    if (o.mode == "modp") j["seed"] = o.seed;
    return j;
}

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

template <class F>
void emit_class(const Options& o, const WeylGroup& W, const F& field, const CohClass<F>& c, json j) {
    json vals = json::object();
    std::ostringstream os;
    for (Elem u = 0; u < W.size(); ++u) {
        std::string s = field.str(c.r[u]);
        vals[W.str(u)] = s;
        os << W.str(u) << ": " << s << "\n";
    }
    j["model"] = fgl_name(c.model);
    j["J"] = subset_str(c.J);
    j["values"] = vals;
    emit(o, j, os.str());
}

// Runs fn(field, ring, localization) over the field chosen by --mode.
template <class Fn>
void with_field(const Options& o, const WeylGroup& W, const Hecke& H, Fn&& fn) {
    if (o.mode == "exact") {
        ExactField F(W);
        TwistedRing<ExactField> R(F);
        Localization<ExactField> L(R, H);
        fn(F, R, L);
    } else {
        ModPField F(W, o.seed, true);
        TwistedRing<ModPField> R(F);
        Localization<ModPField> L(R, H);
        fn(F, R, L);
    }
}

Hecke::Options hecke_options(const Options& o) {
    Hecke::Options h;
    h.cache_dir = cache_dir(o);
    return h;
}

grass::Partition partition(const Options& o, const grass::GrassData& g) {
    auto lam = grass::parse_partition(o.lambda);
    grass::require_fits(lam, g);
    return lam;
}

grass::GrassData grass_data(const Options& o) {
    if (!grass_mode(o)) throw UsageError("this object needs --n and --d");
    return grass::GrassData(o.n, o.d);
}

int compute(const std::string& object, const Options& o) {
    if (object == "tiling" || object == "stabilizers") {
        auto g = grass_data(o);
        auto lam = partition(o, g);
        auto policy = grass::parse_policy(o.policy);
        auto ts = grass::tilings(lam, g, policy);
        json j = header(o, nullptr, object);
        j["policy"] = grass::policy_name(policy);
        j["tilings"] = json::array();
        std::ostringstream os;
        for (size_t k = 0; k < ts.size(); ++k) {
            const auto& t = ts[k];
            auto ch = grass::stabilizer_chain(t, g);
            if (ts.size() > 1) os << "tiling " << k + 1 << "\n";
            if (object == "tiling") {
                j["tilings"].push_back(grass::tiling_json(t, lam, g));
                os << grass::render_ascii(t, lam, g);
                auto ls = grass::label_sets(t, g);
                for (size_t i = 0; i < t.rects.size(); ++i) {
                    const auto& R = t.rects[i];
                    os << "R_" << i + 1 << ": " << R.p << "x" << R.q << " at (" << R.i0 << "," << R.j0 << ")"
                       << "  J=" << grass::label_str(ls[i].J) << " J'=" << grass::label_str(ls[i].Jp)
                       << " K=" << grass::label_str(ls[i].K) << " K'=" << grass::label_str(ls[i].Kp)
                       << "  v=" << grass::word_str(grass::v_word(R, g)) << "\n";
                }
            } else {
                json P = json::array(), Q = json::array();
                for (Subset s : ch.P) P.push_back(grass::label_str(s));
                for (Subset s : ch.Q) Q.push_back(grass::label_str(s));
                j["tilings"].push_back({{"P", P}, {"Q", Q}, {"operator", grass::chain_str(ch, g)}});
            }
            os << grass::chain_str(ch, g) << "\n";
        }
        emit(o, j, os.str());
        return kExitOk;
    }

    auto W = make_group(o, true);
    Hecke H(*W, hecke_options(o));
    json j = header(o, W.get(), object);

    if (object == "kl-poly") {
        Elem v = elem(*W, o.v, "--v"), w = elem(*W, o.w, "--w");
        QPoly p = H.kl_poly(v, w);
        j["v"] = W->str(v), j["w"] = W->str(w), j["coefficients"] = p;
        emit(o, j, qpoly_str(p) + "\n");
        return kExitOk;
    }
    if (object == "kl-basis") {
        Elem w = elem(*W, o.w, "--w");
        HeckeElt g = o.tilde ? H.kl_tilde(w) : H.kl_basis(w);
        json terms = json::object();
        for (Elem v : g.support()) terms[W->str(v)] = g[v].str();
        j["w"] = W->str(w), j["tilde"] = o.tilde, j["terms"] = terms;
        emit(o, j, H.str(g) + "\n");
        return kExitOk;
    }
    if (object == "zelevinsky-operator") {
        auto g = grass_data(o);
        auto lam = partition(o, g);
        auto ts = grass::tilings(lam, g, grass::parse_policy(o.policy));
        int rc = kExitOk;
        with_field(o, *W, H, [&](auto& F, auto& R, auto& L) {
            (void)F;
            auto target = grass::kl_operator(L, lam, g);
            j["tilings"] = json::array();
            std::ostringstream os;
            for (const auto& t : ts) {
                auto op = grass::zelevinsky_operator(R, g, t);
                bool same = R.eq(op, target);
                if (!same) rc = kExitFail;
                std::string chain = grass::chain_str(grass::stabilizer_chain(t, g), g);
                j["tilings"].push_back({{"chain", chain}, {"operator", R.str(op)}, {"equals_kl_operator", same}});
                os << chain << "\nequals mu^{-l} psi(gamma): " << (same ? "yes" : "no") << "\n";
            }
            emit(o, j, os.str());
        });
        return rc;
    }

    int rc = kExitOk;
    with_field(o, *W, H, [&](auto& F, auto& R, auto& L) {
        (void)R;
        Subset J = subset_for(o, *W);
        if (object == "mc" || object == "smc" || object == "kl-class" || object == "kl-schubert") {
            Elem w = elem(*W, o.w, "--w");
            j["w"] = W->str(w);
            if (object == "mc") emit_class(o, *W, F, J ? L.mc_cell_J(w, J) : L.mc_cell(w), j);
            else if (object == "smc") emit_class(o, *W, F, J ? L.smc_cell_J(w, J) : L.smc_cell(w), j);
            else if (object == "kl-class") {
                j["tilde"] = o.tilde;
                auto c = o.tilde ? (J ? L.kl_class_tilde_J(w, J) : L.kl_class_tilde(w)) : (J ? L.kl_class_J(w, J) : L.kl_class(w));
                emit_class(o, *W, F, c, j);
            } else
                emit_class(o, *W, F, L.kl_schubert(w, J), j);
            return;
        }
        if (object == "pairing") {
            Elem u = elem(*W, o.u, "--u"), v = elem(*W, o.v, "--v");
            auto s = o.pairing == "kl"
                         ? L.pairing(J ? L.kl_class_J(u, J) : L.kl_class(u), J ? L.kl_class_tilde_J(v, J) : L.kl_class_tilde(v), J)
                         : L.pairing(J ? L.mc_cell_J(u, J) : L.mc_cell(u), J ? L.smc_cell_J(v, J) : L.smc_cell(v), J);
            j["u"] = W->str(u), j["v"] = W->str(v), j["J"] = subset_str(J), j["classes"] = o.pairing;
            j["value"] = F.str(s);
            emit(o, j, F.str(s) + "\n");
            return;
        }
        throw UsageError("unknown object: " + object);
    });
    return rc;
}

int run_verify(const std::string& suite, const Options& o) {
    if (!verify::is_suite(suite)) throw UsageError("unknown suite: " + suite);
    verify::RunConfig cfg;
    cfg.type = o.type;
    cfg.rank = o.rank;
    cfg.n = o.n;
    cfg.d = o.d;
    cfg.mode = verify::parse_mode(o.mode);
    cfg.points = o.points;
    cfg.seed = o.seed;
    cfg.cache_dir = cache_dir(o);
    cfg.hecke_guard = o.hecke_guard;
    cfg.comb_guard = o.comb_guard;
    cfg.threads = o.threads;
    cfg.samples = o.samples;
    cfg.recheck = o.recheck;
    if (!o.subset.empty()) cfg.subset = parse_subset(o.subset, grass_mode(o) ? o.n - 1 : o.rank);
    auto rep = verify::run_suite(suite, cfg);
    if (o.format == "json") std::cout << rep.json(o.timing).dump(2) << "\n";
    else std::cout << rep.text(o.timing);
    return rep.ok() ? kExitOk : kExitFail;
}

uint64_t fnv1a(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount()) {
        for (std::streamsize k = 0; k < in.gcount(); ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

std::string hex(uint64_t h) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::vector<fs::path> cache_files(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        auto name = e.path().filename().string();
        if (e.is_regular_file() && name.rfind("kl_", 0) == 0 && e.path().extension() == ".json") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

int cache(const std::string& action, const Options& o) {
    auto dir = cache_dir(o);
    if (!dir) throw UsageError("no cache directory: pass --cache-dir or set KLS_CACHE_DIR");
    json j;
    j["format_version"] = verify::kFormatVersion;
    j["action"] = action;
    j["cache_dir"] = dir->string();
    std::ostringstream os;
    if (action == "warm") {
        auto W = make_group(o, true);
        Hecke H(*W, hecke_options(o));
        H.kl_table();
        auto f = H.cache_file();
        j["file"] = f.filename().string();
        j["entries"] = W->size() * W->size();
        j["hash"] = hex(fnv1a(f));
        j["from_cache"] = H.loaded_from_cache();
        os << f.filename().string() << ": " << W->size() * W->size() << " entries, fnv1a " << hex(fnv1a(f))
           << (H.loaded_from_cache() ? " (already warm)" : "") << "\n";
    } else if (action == "show") {
        json files = json::array();
        size_t total = 0;
        for (const auto& f : cache_files(*dir)) {
            size_t entries = 0;
            try {
                std::ifstream in(f);
                json c;
                in >> c;
                entries = c.at("entries").size();
            } catch (const std::exception& e) {
                throw std::runtime_error("unreadable cache file " + f.string() + ": " + e.what());
            }
            total += entries;
            files.push_back({{"file", f.filename().string()}, {"entries", entries}, {"hash", hex(fnv1a(f))}});
            os << f.filename().string() << ": " << entries << " entries, fnv1a " << hex(fnv1a(f)) << "\n";
        }
        j["files"] = files;
        j["entries"] = total;
        os << "total: " << total << " entries\n";
    } else if (action == "clear") {
        size_t removed = 0;
        for (const auto& f : cache_files(*dir)) {
            std::error_code ec;
            if (!fs::remove(f, ec) || ec) throw std::runtime_error("cannot remove " + f.string() + ": " + ec.message());
            ++removed;
        }
        j["removed"] = removed;
        os << "removed " << removed << " file" << (removed == 1 ? "" : "s") << "\n";
    } else {
        throw UsageError("unknown cache action: " + action);
    }
    emit(o, j, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kazhdan-Lusztig, motivic Chern and KL-Schubert class computations"};
    app.require_subcommand(1);
    Options o;
    std::string object, suite, action;

    auto* comp = app.add_subcommand("compute", "compute one object");
    comp->add_option("object", object, "kl-poly, kl-basis, mc, smc, kl-class, kl-schubert, pairing, tiling, stabilizers, zelevinsky-operator")
        ->required();
    add_group_options(comp, o);
    add_run_options(comp, o);
    comp->add_option("--v", o.v, "element (word like s2,s1 or one-line [2,1,3])");
    comp->add_option("--w", o.w, "element");
    comp->add_option("--u", o.u, "element");
    comp->add_option("--subset", o.subset, "parabolic subset, e.g. 1,3");
    comp->add_option("--lambda", o.lambda, "partition, e.g. 5,5,3,2,2");
    comp->add_option("--policy", o.policy, "tiling policy: largest_index, smallest_index, enumerate_all");
    comp->add_option("--classes", o.pairing, "pairing: kl (C with C~) or mc (MC with SMC)")->check(CLI::IsMember({"kl", "mc"}));
    comp->add_flag("--tilde", o.tilde, "use the second KL basis");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "one of: braid, duality, parabolic-duality, serre, smoothness, psi, gammapsirel, "
                                    "orthogonality, zelevinsky, inversion, pushforward")
        ->required();
    add_group_options(ver, o);
    add_run_options(ver, o);
    ver->add_option("--subset", o.subset, "parabolic subset for parabolic-duality");
    ver->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    ver->add_option("--samples", o.samples, "random cases for serre");
    ver->add_option("--recheck", o.recheck, "in modp mode, re-run this many cases exactly");
    ver->add_flag("--timing", o.timing, "include timing in the report");

    auto* cac = app.add_subcommand("cache", "manage the KL cache");
    cac->add_option("action", action, "show, clear or warm")->required()->check(CLI::IsMember({"show", "clear", "warm"}));
    add_group_options(cac, o);
    cac->add_option("--cache-dir", o.cache_dir, "KL cache directory (default: $KLS_CACHE_DIR)");
    cac->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cac->add_option("--hecke-guard", o.hecke_guard, "largest |W| for Hecke computations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*comp) return compute(object, o);
        if (*ver) return run_verify(suite, o);
        if (*cac) return cache(action, o);
    } catch (const verify::GuardError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::length_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitGuard;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
