#include "k3gauss/lattice_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace k3gauss {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_int_token(const std::string& tok, Int& out) {
    if (tok.empty()) return false;
    size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    out = Int(tok);
    return true;
}

}  // namespace

PicardLattice parse_lattice_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::string name;
    int rank = -1;
    std::vector<Int> gram_flat;
    std::vector<std::string> labels;
    bool in_gram = false;
    int lineno = 0;

    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };

        const size_t colon = t.find(':');
        std::string key = colon == std::string::npos ? "" : trim(t.substr(0, colon));
        const bool keyed = colon != std::string::npos && !key.empty() && key.find(' ') == std::string::npos;
        if (keyed) in_gram = false;

        if (keyed && key == "name") {
            name = trim(t.substr(colon + 1));
        } else if (keyed && key == "rank") {
            try {
                rank = std::stoi(trim(t.substr(colon + 1)));
            } catch (...) {
                throw ParseError("field `rank`: not an integer" + where());
            }
            if (rank < 1) throw ParseError("field `rank`: must be positive" + where());
        } else if (keyed && key == "gram") {
            in_gram = true;
            std::istringstream ls(t.substr(colon + 1));
            std::string tok;
            while (ls >> tok) {
                Int v;
                if (!parse_int_token(tok, v))
                    throw ParseError("field `gram`: bad integer token `" + tok + "`" + where());
                gram_flat.push_back(std::move(v));
            }
        } else if (keyed && key == "basis_labels") {
            std::istringstream ls(t.substr(colon + 1));
            std::string tok;
            while (ls >> tok) labels.push_back(tok);
        } else if (in_gram) {
            // continuation of the gram entry list
            std::istringstream ls(t);
            std::string tok;
            while (ls >> tok) {
                Int v;
                if (!parse_int_token(tok, v))
                    throw ParseError("field `gram`: bad integer token `" + tok + "`" + where());
                gram_flat.push_back(std::move(v));
            }
        } else {
            throw ParseError("unrecognized line `" + t + "`" + where());
        }
    }
    if (rank < 1) throw ParseError("missing `rank` field");
    if (static_cast<long long>(gram_flat.size()) != static_cast<long long>(rank) * rank)
        throw ParseError("field `gram`: expected " + std::to_string(rank * rank) +
                         " entries, got " + std::to_string(gram_flat.size()));
    std::vector<std::vector<Int>> gram(rank, std::vector<Int>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) gram[i][j] = gram_flat[i * rank + j];
    // PicardLattice validates symmetry/evenness/signature and names violations
    return PicardLattice(std::move(gram), name, labels);
}

PicardLattice load_lattice_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open lattice file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_lattice_text(buf.str());
}

std::string render_lattice(const PicardLattice& lat) {
    std::ostringstream os;
    if (!lat.name().empty()) os << "name: " << lat.name() << "\n";
    os << "rank: " << lat.rank() << "\n";
    os << "gram:";
    for (int i = 0; i < lat.rank(); ++i)
        for (int j = 0; j < lat.rank(); ++j) os << " " << lat.gram(i, j);
    os << "\n";
    os << "basis_labels:";
    for (const auto& l : lat.basis_labels()) os << " " << l;
    os << "\n";
    return os.str();
}

DivisorClass parse_class_expr(const PicardLattice& lat, const std::string& expr) {
    const std::string e = trim(expr);
    if (e.empty()) throw ParseError("empty class expression");
    std::vector<Int> coords(lat.rank(), Int(0));

    if (e.find(',') != std::string::npos) {
        std::vector<Int> vals;
        std::string tok;
        std::istringstream is(e);
        while (std::getline(is, tok, ',')) {
            Int v;
            if (!parse_int_token(trim(tok), v))
                throw ParseError("bad coordinate `" + trim(tok) + "` in class expression");
            vals.push_back(std::move(v));
        }
        if (static_cast<int>(vals.size()) != lat.rank())
            throw ParseError("class has " + std::to_string(vals.size()) +
                             " coordinates, lattice rank is " + std::to_string(lat.rank()));
        return DivisorClass(std::move(vals));
    }

    // signed sum of [coefficient]label terms
    size_t i = 0;
    const auto& labels = lat.basis_labels();
    while (i < e.size()) {
        Int sign = 1;
        if (e[i] == '+' || e[i] == '-') {
            if (e[i] == '-') sign = -1;
            ++i;
        }
        std::string digits;
        while (i < e.size() && std::isdigit(static_cast<unsigned char>(e[i]))) digits += e[i++];
        // longest label match at this position
        int best = -1;
        size_t best_len = 0;
        for (size_t bi = 0; bi < labels.size(); ++bi) {
            const auto& lab = labels[bi];
            if (lab.size() > best_len && e.compare(i, lab.size(), lab) == 0) {
                best = static_cast<int>(bi);
                best_len = lab.size();
            }
        }
        if (best < 0)
            throw ParseError("expected a basis label at position " + std::to_string(i) +
                             " of class expression `" + e + "`");
        i += best_len;
        const Int coef = digits.empty() ? Int(1) : Int(digits);
        coords[best] += sign * coef;
    }
    return DivisorClass(std::move(coords));
}

std::string class_to_expr(const PicardLattice& lat, const DivisorClass& cls) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < cls.dim(); ++i) {
        const Int& x = cls.coords[i];
        if (x == 0) continue;
        if (x > 0 && !first) os << "+";
        if (x == -1)
            os << "-";
        else if (x != 1)
            os << x;
        os << lat.basis_labels()[i];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string fnv1a64_hex(const std::string& data) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace k3gauss
