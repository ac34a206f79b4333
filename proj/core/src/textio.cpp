#include "k3lat/textio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace k3lat {

std::string order_name(const PolyRing& R) {
    switch (R.order()) {
        case Order::GrevLex: return "grevlex";
        case Order::Lex: return "lex";
        case Order::Elim: return "elim" + std::to_string(R.elim_k());
    }
    return "grevlex";
}

std::string poly_to_line(const Poly& f) {
    if (f.is_zero()) return "0";
    const PolyRing& R = *f.ring();
    std::string out;
    bool first = true;
    for (const Term& t : f.terms()) {
        if (!first) out += '+';
        first = false;
        out += std::to_string(t.c);
        for (int i = 0; i < R.nvars(); ++i) {
            if (!t.m.e[i]) continue;
            out += "*x" + std::to_string(i);
            if (t.m.e[i] > 1) out += "^" + std::to_string(static_cast<int>(t.m.e[i]));
        }
    }
    return out;
}

Poly poly_from_line(const RingPtr& ring, const std::string& line) {
    if (line.empty() || line == "0") return Poly(ring);
    std::vector<Term> terms;
    size_t pos = 0;
    while (pos < line.size()) {
        size_t end = line.find('+', pos);
        if (end == std::string::npos) end = line.size();
        std::string chunk = line.substr(pos, end - pos);
        pos = end + 1;
        // <coeff>[*x<i>[^<e>]]*
        size_t cpos = 0;
        size_t star = chunk.find('*');
        uint64_t coeff = std::stoull(chunk.substr(0, star == std::string::npos ? chunk.size() : star));
        Monomial m;
        if (star != std::string::npos) {
            cpos = star + 1;
            while (cpos < chunk.size()) {
                if (chunk[cpos] != 'x')
                    throw std::runtime_error("poly_from_line: expected variable in '" + chunk + "'");
                ++cpos;
                size_t q = cpos;
                while (q < chunk.size() && isdigit(chunk[q])) ++q;
                int var = std::stoi(chunk.substr(cpos, q - cpos));
                cpos = q;
                int e = 1;
                if (cpos < chunk.size() && chunk[cpos] == '^') {
                    ++cpos;
                    q = cpos;
                    while (q < chunk.size() && isdigit(chunk[q])) ++q;
                    e = std::stoi(chunk.substr(cpos, q - cpos));
                    cpos = q;
                }
                if (cpos < chunk.size()) {
                    if (chunk[cpos] != '*')
                        throw std::runtime_error("poly_from_line: bad term '" + chunk + "'");
                    ++cpos;
                }
                if (var < 0 || var >= ring->nvars())
                    throw std::runtime_error("poly_from_line: variable out of range");
                m.e[var] = static_cast<uint8_t>(m.e[var] + e);
                m.deg = static_cast<uint16_t>(m.deg + e);
            }
        }
        terms.push_back(Term{m, static_cast<uint32_t>(coeff % ring->p())});
    }
    return Poly(ring, std::move(terms));
}

std::string ideal_to_text(const Ideal& I) {
    const PolyRing& R = *I.ring();
    std::ostringstream os;
    os << "ring p=" << R.p() << " vars=x0..x" << (R.nvars() - 1) << " order=" << order_name(R)
       << "\n";
    for (const Poly& g : I.gens()) os << poly_to_line(g) << "\n";
    return os.str();
}

Ideal ideal_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("ring ", 0) != 0)
        throw std::runtime_error("ideal_from_text: missing header");
    uint32_t p = 0;
    int last_var = -1;
    std::string order = "grevlex";
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("p=", 0) == 0) p = static_cast<uint32_t>(std::stoul(tok.substr(2)));
            else if (tok.rfind("vars=", 0) == 0) {
                std::string v = tok.substr(5);
                size_t dots = v.find("..");
                if (dots == std::string::npos || v[0] != 'x')
                    throw std::runtime_error("ideal_from_text: bad vars field");
                last_var = std::stoi(v.substr(dots + 3));
            } else if (tok.rfind("order=", 0) == 0) {
                order = tok.substr(6);
            }
        }
    }
    if (!p || last_var < 0) throw std::runtime_error("ideal_from_text: incomplete header");
    Order ord = Order::GrevLex;
    int elim_k = 0;
    if (order == "lex")
        ord = Order::Lex;
    else if (order.rfind("elim", 0) == 0) {
        ord = Order::Elim;
        elim_k = std::stoi(order.substr(4));
    } else if (order != "grevlex") {
        throw std::runtime_error("ideal_from_text: unknown order " + order);
    }
    RingPtr ring = make_ring(p, last_var + 1, ord, elim_k);
    std::vector<Poly> gens;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Poly f = poly_from_line(ring, line);
        if (!f.is_zero()) gens.push_back(std::move(f));
    }
    return Ideal(ring, std::move(gens));
}

void write_ideal_file(const std::string& path, const Ideal& I) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("write_ideal_file: cannot open " + tmp);
        os << ideal_to_text(I);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_ideal_file: rename failed for " + path);
}

Ideal read_ideal_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_ideal_file: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ideal_from_text(ss.str());
}

}  // namespace k3lat
