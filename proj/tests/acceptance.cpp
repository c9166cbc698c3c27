#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <malloc.h>

#include <cobord/acceptance.hpp>

namespace
{

// Runs a command and returns its stdout and exit status.
std::pair<std::string, int> capture(const std::string &cmd)
{
    std::string out;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return {"", -1};
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) {
        out.append(buf.data(), got);
    }
    return {out, pclose(p)};
}

void report(int id, const std::string &name, bool pass, double secs, double limit, const std::string &detail)
{
    std::printf("C%d %s %-24s %7.2fs (limit %gs)  %s\n", id, pass ? "PASS" : "FAIL", name.c_str(), secs, limit,
                detail.c_str());
    std::fflush(stdout);
}

} // namespace

int main()
{
    mallopt(M_MMAP_MAX, 0);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
    using clock = std::chrono::steady_clock;
    bool all = true;
    for (const auto &c : cobord::acceptance::criteria()) {
        const auto t0 = clock::now();
        cobord::acceptance::result r;
        try {
            r = c.run();
        } catch (const std::exception &e) {
            r = {c.id, c.name, false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        const bool pass = r.pass && secs < c.limit_seconds;
        all = all && pass;
        report(c.id, c.name, pass, secs, c.limit_seconds, r.detail);
    }

    const auto t0 = clock::now();
    const std::string cmd = std::string("\"") + COBORD_CLI_PATH + "\" selftest";
    const auto [first, rc1] = capture(cmd);
    const auto [second, rc2] = capture(cmd);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool same = rc1 == 0 && rc2 == 0 && !first.empty() && first == second;
    all = all && same;
    std::printf("C8 %s %-24s %7.2fs (no limit)  %s\n", same ? "PASS" : "FAIL", "determinism", secs,
                same ? ("two selftest runs byte-identical, " + std::to_string(first.size()) + " bytes").c_str()
                     : "selftest output differs or failed");
    return all ? 0 : 1;
}
