#include "bobylev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bobylev {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string snapshot_csv(const IsoSpectralField& f) {
    std::string out = "x,phi\n";
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        out += fmt_full(f.x[i]);
        out += ',';
        out += fmt_full(f.phi[i]);
        out += '\n';
    }
    return out;
}

std::string moments_csv(const std::vector<MomentRow>& rows) {
    std::string out = "t,m0,m1,m2,m3,m4\n";
    for (const auto& r : rows) {
        out += fmt_full(r.t);
        for (double m : r.m) {
            out += ',';
            out += fmt_full(m);
        }
        out += '\n';
    }
    return out;
}

} // namespace bobylev
