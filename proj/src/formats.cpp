#include "gisoforge/formats.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace gisoforge {

namespace {

const std::string kGraph6Header = ">>graph6<<";

void append_size(std::string &out, long long n) {
    if (n < 0) throw std::invalid_argument("graph6: negative size");
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else if (n <= 68719476735LL) {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        throw std::invalid_argument("graph6: vertex count too large");
    }
}

long long read_size(const std::string &s, std::size_t &pos) {
    auto byte = [&](std::size_t i) -> long long {
        if (i >= s.size()) throw std::invalid_argument("graph6: truncated size");
        long long v = static_cast<unsigned char>(s[i]) - 63;
        if (v < 0 || v > 63) throw std::invalid_argument("graph6: bad size byte");
        return v;
    };
    if (byte(pos) != 63) return byte(pos++);
    if (byte(pos + 1) != 63) {
        long long n = (byte(pos + 1) << 12) | (byte(pos + 2) << 6) | byte(pos + 3);
        pos += 4;
        return n;
    }
    long long n = 0;
    for (int i = 0; i < 6; ++i) n = (n << 6) | byte(pos + 2 + i);
    pos += 8;
    return n;
}

} // namespace

std::string to_graph6(const Graph &g, bool with_header) {
    std::string out;
    if (with_header) out += kGraph6Header;
    append_size(out, g.vertex_count());
    int n = g.vertex_count();
    // Upper triangle, column by column: x(0,1), x(0,2), x(1,2), x(0,3), ...
    int bit_pos = 0;
    int acc = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row) {
            acc = (acc << 1) | (g.has_edge(row, col) ? 1 : 0);
            if (++bit_pos == 6) {
                out.push_back(static_cast<char>(acc + 63));
                bit_pos = 0;
                acc = 0;
            }
        }
    }
    if (bit_pos > 0) {
        acc <<= (6 - bit_pos);
        out.push_back(static_cast<char>(acc + 63));
    }
    return out;
}

Graph from_graph6(const std::string &line) {
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(kGraph6Header, 0) == 0) s = s.substr(kGraph6Header.size());
    std::size_t pos = 0;
    long long n = read_size(s, pos);
    long long bits_needed = n * (n - 1) / 2;
    long long bytes_needed = (bits_needed + 5) / 6;
    if (static_cast<long long>(s.size()) - static_cast<long long>(pos) != bytes_needed)
        throw std::invalid_argument("graph6: payload length mismatch");
    std::vector<Edge> edges;
    long long bit_index = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row, ++bit_index) {
            long long byte_i = bit_index / 6;
            int shift = 5 - static_cast<int>(bit_index % 6);
            int v = static_cast<unsigned char>(s[pos + byte_i]) - 63;
            if (v < 0 || v > 63) throw std::invalid_argument("graph6: bad payload byte");
            if ((v >> shift) & 1) edges.push_back({row, col});
        }
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_dimacs(const Graph &g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto &e : g.edges())
        out << "e " << (e.first + 1) << " " << (e.second + 1) << "\n";
    return out.str();
}

std::string hypergraph_to_json(const Hypergraph &g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["k"] = g.uniformity();
    j["edges"] = g.edges();
    return j.dump();
}

Hypergraph hypergraph_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    return Hypergraph(j.at("n").get<int>(), j.at("k").get<int>(),
                      j.at("edges").get<std::vector<std::vector<int>>>());
}

} // namespace gisoforge
