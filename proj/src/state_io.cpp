#include "triaxis/error.hpp"
#include "triaxis/format.hpp"
#include "triaxis/states.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace triaxis {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool next_content_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (!line.empty() && line[0] != '#')
            return true;
    }
    return false;
}

[[noreturn]] void bad(int lineno, const std::string& what) {
    throw InvalidArgument("state file line " + std::to_string(lineno) + ": " + what);
}

} // namespace

SpinState read_state(std::istream& in, bool renormalize) {
    std::string line;
    int lineno = 0;
    if (!next_content_line(in, line, lineno))
        throw InvalidArgument("state file is empty");

    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)) != "two_j")
        bad(lineno, "expected 'two_j = <int>'");
    std::istringstream hs(line.substr(eq + 1));
    hs.imbue(std::locale::classic());
    long two_j = -1;
    std::string rest;
    if (!(hs >> two_j) || (hs >> rest) || two_j < 0 || two_j > 100000)
        bad(lineno, "two_j must be a non-negative integer");

    const HalfInteger j(static_cast<int>(two_j));
    std::vector<Complex> amps;
    amps.reserve(j.dim());
    while (amps.size() < j.dim()) {
        if (!next_content_line(in, line, lineno))
            throw InvalidArgument("state file ends after " + std::to_string(amps.size()) +
                                  " amplitudes; expected " + std::to_string(j.dim()));
        std::istringstream ls(line);
        ls.imbue(std::locale::classic());
        double re = 0.0, im = 0.0;
        if (!(ls >> re >> im) || (ls >> rest))
            bad(lineno, "expected '<re> <im>'");
        if (!std::isfinite(re) || !std::isfinite(im))
            bad(lineno, "amplitude is not finite");
        amps.emplace_back(re, im);
    }
    if (next_content_line(in, line, lineno))
        bad(lineno, "unexpected content after " + std::to_string(j.dim()) + " amplitudes");

    SpinState psi(j, std::move(amps));
    const double n2 = psi.norm() * psi.norm();
    if (renormalize)
        return psi.normalized();
    if (std::abs(n2 - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "state is not normalized (sum |c|^2 = " << format_double(n2)
           << "); pass --renormalize to accept it";
        throw InvalidArgument(os.str());
    }
    return psi;
}

void write_state(std::ostream& out, const SpinState& psi) {
    out << "two_j = " << psi.j().two_j() << '\n';
    for (const auto& a : psi.amplitudes())
        out << format_double(a.real()) << ' ' << format_double(a.imag()) << '\n';
}

} // namespace triaxis
