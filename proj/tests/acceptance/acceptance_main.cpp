// Acceptance runner: one PASS/FAIL line per claim. Exit status 1 if any claim fails.
//
//   acceptance                  all criteria
//   acceptance --criterion 4    one criterion (repeatable)
//   acceptance --jobs 3

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "faraday/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    unsigned jobs = faraday::default_jobs();
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--criterion" || arg == "--jobs") && i + 1 < argc) {
            const int v = std::atoi(argv[++i]);
            if (v <= 0) {
                std::fprintf(stderr, "bad value for %s\n", arg.c_str());
                return 2;
            }
            if (arg == "--criterion") ids.push_back(v);
            else jobs = static_cast<unsigned>(v);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]... [--jobs N]\n");
            return 2;
        }
    }

    const auto result = faraday::check_paper(jobs, ids);
    int failed = 0;
    for (const auto& c : result.manifest.claims) {
        std::printf("%s  %-9s %s: computed %s, reference %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                    c.description.c_str(), c.computed.c_str(), c.reference.c_str(), c.tolerance.c_str());
        failed += c.pass ? 0 : 1;
    }
    for (const auto& row : result.discrepancies.rows) {
        std::printf("INFO  endpoint  %s: computed %s, reference %s, ratio %s\n", row[0].c_str(), row[1].c_str(),
                    row[2].c_str(), row[3].c_str());
    }
    std::printf("%zu claims, %d failed\n", result.manifest.claims.size(), failed);
    return failed == 0 ? 0 : 1;
}
