#include <iostream>

#include "CLI11.hpp"
#include "zel/cliapp.hpp"

int main(int argc, char** argv) {
    CLI::App app{"zeta and L-functions of schemes over finite fields, p-adic zeta elements, "
                 "and identity checks between them"};
    app.require_subcommand(1);

    zel::cli::JobConfig cfg;

    auto add_common = [&cfg](CLI::App* c) {
        c->add_option("--scheme", cfg.scheme_path, "scheme definition file");
        c->add_option("--phi", cfg.phi_inline,
                      "inline JSON: a Frobenius matrix, or {\"components\":[{\"degree\":d,"
                      "\"phi\":M},...]}");
        c->add_option("--name", cfg.name, "catalog entry name (see the catalog command)");
        c->add_option("--ch", cfg.ch, "catalog base field characteristic")
            ->capture_default_str();
        c->add_option("--fdeg", cfg.fdeg, "catalog base field degree over its prime field")
            ->capture_default_str();
        c->add_option("--p", cfg.p, "coefficient prime (must differ from the base "
                                    "characteristic)");
        c->add_option("--k", cfg.k, "coefficient precision: work modulo p^k")
            ->capture_default_str();
        c->add_option("--n", cfg.n, "group-ring level: adjoin u with u^n = 1");
        c->add_option("--n2", cfg.n2, "coarser level for base change (default: largest "
                                      "proper divisor of n)");
        c->add_option("--deg", cfg.deg, "point degree for an inline matrix, or the "
                                        "induction degree")
            ->capture_default_str();
        c->add_option("--chain", cfg.chain, "divisor chain for norm systems, e.g. 1,2,6,12")
            ->delimiter(',');
        c->add_option("--N", cfg.N, "number of extensions to count / series order");
        c->add_option("--budget", cfg.budget, "max tuples to enumerate per count")
            ->capture_default_str();
        c->add_option("--cache", cfg.cache_dir, "count cache directory");
        c->add_flag("--verify-cache", cfg.verify_cache,
                    "recompute one cached count and compare");
        c->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "structured"}))
            ->capture_default_str();
        c->add_option("--seed", cfg.seed, "run a randomized batch with this seed");
        c->add_option("--batch", cfg.batch, "randomized batch size")->capture_default_str();
    };

    add_common(app.add_subcommand("count", "count points over F_{q^n} for n = 1..N"));
    add_common(app.add_subcommand("zeta", "reconstruct the zeta function from point counts"));
    add_common(app.add_subcommand(
        "euler", "Euler product over closed points, cross-checked against counts"));
    CLI::App* verify = app.add_subcommand("verify", "check an identity at a finite level");
    verify
        ->add_option("identity", cfg.identity,
                     "identity tag: 1.3.5 | 1.3.6 | 2.1.3 | 2.1.4 | 2.1.5 | norm")
        ->required()
        ->check(CLI::IsMember({"1.3.5", "1.3.6", "2.1.3", "2.1.4", "2.1.5", "norm"}));
    add_common(verify);
    add_common(app.add_subcommand("catalog",
                                  "validate stock cohomology models against point counts"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    const zel::cli::JobResult res = zel::cli::run_job(cfg);
    if (res.exit_code == 2)
        std::cerr << res.output;
    else
        std::cout << res.output;
    return res.exit_code;
}
