#pragma once

#include <fstream>
#include <sstream>

#include "hh/multifunction.hpp"

namespace hh {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline int parse_int(const std::string& tok, int line_no, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error("line " + std::to_string(line_no) + ": expected " + what + ", got '" + tok + "'");
    }
}

inline Relation parse_relation_decl(const std::string& tok, int line_no) {
    auto slash = tok.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= tok.size())
        throw Error("line " + std::to_string(line_no) + ": expected <name>/<arity>, got '" + tok + "'");
    Relation r;
    r.name = tok.substr(0, slash);
    r.arity = parse_int(tok.substr(slash + 1), line_no, "relation arity");
    return r;
}

inline Signature parse_signature_tokens(const std::vector<std::string>& toks, std::size_t start, int line_no) {
    std::vector<Relation> rels;
    for (std::size_t i = start; i < toks.size(); ++i) {
        const std::string& tok = toks[i];
        if (tok.find('/') != std::string::npos) {
            rels.push_back(parse_relation_decl(tok, line_no));
        } else {
            if (rels.empty())
                throw Error("line " + std::to_string(line_no) + ": flag '" + tok + "' before any relation");
            if (tok == "sym") rels.back().symmetric = true;
            else if (tok == "irr") rels.back().irreflexive = true;
            else if (tok == "anti") rels.back().antisymmetric = true;
            else throw Error("line " + std::to_string(line_no) + ": unknown flag '" + tok + "'");
        }
    }
    try {
        return Signature(rels);
    } catch (const Error& e) {
        throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
}

}  // namespace detail

/// Parses the line-oriented structure format:
///   signature <name>/<arity>[ <flag>...] ...   (flags: sym, irr, anti)
///   domain <n>
///   <relname> <v1> ... <v_arity>               (one tuple per line)
/// '#' starts a comment; blank lines are ignored.
inline Structure parse_structure(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::optional<Signature> sig;
    std::optional<int> domain;
    std::optional<Structure> m;
    int sig_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (!sig) {
            if (toks[0] != "signature")
                throw Error("line " + std::to_string(line_no) + ": expected 'signature', got '" + toks[0] + "'");
            sig = detail::parse_signature_tokens(toks, 1, line_no);
            sig_line = line_no;
            continue;
        }
        if (!domain) {
            if (toks[0] != "domain" || toks.size() != 2)
                throw Error("line " + std::to_string(line_no) + ": expected 'domain <n>'");
            domain = detail::parse_int(toks[1], line_no, "domain size");
            if (*domain < 0) throw Error("line " + std::to_string(line_no) + ": domain size must be nonnegative");
            m = Structure(*sig, *domain);
            continue;
        }
        int rel = sig->index_of(toks[0]);
        if (rel < 0) throw Error("line " + std::to_string(line_no) + ": unknown relation '" + toks[0] + "'");
        const int arity = sig->at(rel).arity;
        if (static_cast<int>(toks.size()) - 1 != arity)
            throw Error("line " + std::to_string(line_no) + ": relation '" + toks[0] + "' expects " +
                        std::to_string(arity) + " entries");
        Tuple t;
        for (std::size_t i = 1; i < toks.size(); ++i)
            t.push_back(detail::parse_int(toks[i], line_no, "vertex index"));
        try {
            m->add_tuple(rel, t);
        } catch (const Error& e) {
            throw Error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!sig) throw Error("empty input: expected a signature line");
    if (!domain) throw Error("line " + std::to_string(sig_line) + ": signature without a domain line");
    return *m;
}

inline Structure parse_structure(const std::string& text) {
    std::istringstream in(text);
    return parse_structure(in);
}

inline std::string signature_decl(const Signature& sig) {
    std::string out;
    for (int i = 0; i < sig.size(); ++i) {
        const Relation& r = sig.at(i);
        if (i) out += ' ';
        out += r.name + "/" + std::to_string(r.arity);
        if (r.symmetric) out += " sym";
        if (r.irreflexive) out += " irr";
        if (r.antisymmetric) out += " anti";
    }
    return out;
}

/// Serializes with tuples in lexicographic order, one orientation only for
/// symmetric relations. parse(serialize(m)) == m.
inline std::string serialize_structure(const Structure& m) {
    std::ostringstream out;
    out << "signature " << signature_decl(m.signature()) << "\n";
    out << "domain " << m.size() << "\n";
    for (int rel = 0; rel < m.relation_count(); ++rel) {
        const Relation& r = m.signature().at(rel);
        for (const auto& t : m.tuples(rel)) {
            if (r.symmetric && r.arity == 2 && t[0] > t[1]) continue;
            out << r.name;
            for (int v : t) out << ' ' << v;
            out << "\n";
        }
    }
    return out.str();
}

inline Structure load_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open structure file '" + path + "'");
    try {
        return parse_structure(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

inline void save_structure_file(const std::string& path, const Structure& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write structure file '" + path + "'");
    out << serialize_structure(m);
}

/// Raw contents of a map/multifunction file: a header line
///   map <source-file> <target-file>
/// followed by pair lines '<src> -> <tgt>'. Repeated sources make the pair
/// set a multifunction.
struct MapFileData {
    std::string source_path;
    std::string target_path;
    std::vector<std::pair<int, int>> pairs;
};

inline MapFileData parse_map_file_text(std::istream& in) {
    MapFileData data;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks[0] != "map" || toks.size() != 3)
                throw Error("line " + std::to_string(line_no) + ": expected 'map <source-file> <target-file>'");
            data.source_path = toks[1];
            data.target_path = toks[2];
            have_header = true;
            continue;
        }
        if (toks.size() != 3 || toks[1] != "->")
            throw Error("line " + std::to_string(line_no) + ": expected '<src> -> <tgt>'");
        data.pairs.emplace_back(detail::parse_int(toks[0], line_no, "source vertex"),
                                detail::parse_int(toks[2], line_no, "target vertex"));
    }
    if (!have_header) throw Error("empty input: expected a 'map' header line");
    return data;
}

inline std::string directory_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos + 1);
}

inline std::string resolve_relative(const std::string& base_dir, const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    return base_dir + path;
}

struct LoadedMapFile {
    Structure source;
    Structure target;
    std::vector<std::pair<int, int>> pairs;

    PartialMap as_map() const {
        PartialMap f(source, target);
        for (auto [s, t] : pairs) {
            if (s < 0 || s >= source.size()) throw Error("map: source vertex " + std::to_string(s) + " out of range");
            if (t < 0 || t >= target.size()) throw Error("map: target vertex " + std::to_string(t) + " out of range");
            int& slot = f.img[static_cast<std::size_t>(s)];
            if (slot != kUnset && slot != t)
                throw Error("map: source vertex " + std::to_string(s) + " listed with two targets (use a multifunction)");
            slot = t;
        }
        return f;
    }

    Multifunction as_multifunction() const {
        Multifunction m(source, target);
        for (auto [s, t] : pairs) {
            if (s < 0 || s >= source.size()) throw Error("map: source vertex " + std::to_string(s) + " out of range");
            if (t < 0 || t >= target.size()) throw Error("map: target vertex " + std::to_string(t) + " out of range");
            m.img[static_cast<std::size_t>(s)].push_back(t);
        }
        for (auto& set : m.img) {
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
        }
        validate_multifunction(m);
        return m;
    }
};

inline LoadedMapFile load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open map file '" + path + "'");
    MapFileData data;
    try {
        data = parse_map_file_text(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
    const std::string dir = directory_of(path);
    LoadedMapFile out;
    out.source = load_structure_file(resolve_relative(dir, data.source_path));
    out.target = load_structure_file(resolve_relative(dir, data.target_path));
    out.pairs = data.pairs;
    return out;
}

/// Compact one-line structure encoding used inside ledger records:
/// "<n>;<tuples for rel 0>;<tuples for rel 1>;..." where each relation's
/// tuples are comma-separated and entries space-separated.
inline std::string compact_structure(const Structure& m) {
    std::ostringstream out;
    out << m.size();
    for (int rel = 0; rel < m.relation_count(); ++rel) {
        out << ';';
        const auto& tab = m.tuples(rel);
        for (std::size_t i = 0; i < tab.size(); ++i) {
            if (i) out << ',';
            for (std::size_t j = 0; j < tab[i].size(); ++j) {
                if (j) out << ' ';
                out << tab[i][j];
            }
        }
    }
    return out.str();
}

inline Structure parse_compact_structure(const Signature& sig, const std::string& text) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    if (static_cast<int>(fields.size()) != sig.size() + 1)
        throw Error("compact structure: expected " + std::to_string(sig.size() + 1) + " fields");
    int n = detail::parse_int(fields[0], 0, "domain size");
    Structure m(sig, n);
    for (int rel = 0; rel < sig.size(); ++rel) {
        const std::string& field = fields[static_cast<std::size_t>(rel) + 1];
        if (field.empty()) continue;
        std::string item;
        std::istringstream in(field);
        while (std::getline(in, item, ',')) {
            auto toks = detail::tokenize(item);
            Tuple t;
            for (const auto& tok : toks) t.push_back(detail::parse_int(tok, 0, "vertex index"));
            m.add_tuple(rel, t);
        }
    }
    return m;
}

/// Compact pair-set encodings: maps as "s:t" items, multifunctions as
/// "s:t1+t2" items, both space-separated.
inline std::string compact_assignment(const std::vector<int>& img) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t v = 0; v < img.size(); ++v) {
        if (img[v] == kUnset) continue;
        if (!first) out << ' ';
        first = false;
        out << v << ':' << img[v];
    }
    return out.str();
}

inline std::vector<int> parse_compact_assignment(int source_size, const std::string& text) {
    std::vector<int> img(static_cast<std::size_t>(source_size), kUnset);
    for (const auto& tok : detail::tokenize(text)) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error("compact map: expected s:t items");
        int s = detail::parse_int(tok.substr(0, colon), 0, "source vertex");
        int t = detail::parse_int(tok.substr(colon + 1), 0, "target vertex");
        if (s < 0 || s >= source_size) throw Error("compact map: source out of range");
        img.at(static_cast<std::size_t>(s)) = t;
    }
    return img;
}

inline std::string compact_image_sets(const std::vector<std::vector<int>>& img) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t v = 0; v < img.size(); ++v) {
        if (img[v].empty()) continue;
        if (!first) out << ' ';
        first = false;
        out << v << ':';
        for (std::size_t i = 0; i < img[v].size(); ++i) {
            if (i) out << '+';
            out << img[v][i];
        }
    }
    return out.str();
}

inline std::vector<std::vector<int>> parse_compact_image_sets(int source_size, const std::string& text) {
    std::vector<std::vector<int>> img(static_cast<std::size_t>(source_size));
    for (const auto& tok : detail::tokenize(text)) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error("compact multifunction: expected s:t1+t2 items");
        int s = detail::parse_int(tok.substr(0, colon), 0, "source vertex");
        if (s < 0 || s >= source_size) throw Error("compact multifunction: source out of range");
        std::string rest = tok.substr(colon + 1);
        std::string item;
        std::istringstream in(rest);
        while (std::getline(in, item, '+'))
            img.at(static_cast<std::size_t>(s)).push_back(detail::parse_int(item, 0, "target vertex"));
        std::sort(img[static_cast<std::size_t>(s)].begin(), img[static_cast<std::size_t>(s)].end());
    }
    return img;
}

}  // namespace hh
