#include "subtess/weighted.hpp"

#include <json.hpp>
#include <map>

namespace subtess {

WeightedAutomaton char_function(const Dfa& a) {
    Semiring r = Semiring::ninf();
    std::size_t n = a.states();
    WeightedAutomaton w{r, a.alphabet(), n, Mat::zeros(1, n, r), {},
                        Mat::zeros(n, 1, r)};
    w.lambda.at(0, 0) = SemiringValue::one(r);
    for (Sym s = 0; s < a.alphabet().size(); ++s) {
        Mat m = Mat::zeros(n, n, r);
        for (std::uint32_t q = 0; q < n; ++q)
            m.at(q, a.next(q, s)) = SemiringValue::one(r);
        w.mu.push_back(std::move(m));
    }
    for (std::uint32_t q = 0; q < n; ++q)
        if (a.accepting(q)) w.nu.at(q, 0) = SemiringValue::one(r);
    return w;
}

SemiringValue eval(const WeightedAutomaton& w, const Word& word) {
    Mat row = w.lambda;
    for (Sym s : word) {
        if (s >= w.alphabet.size()) throw Error("eval: unknown symbol");
        row = mat_mul(row, w.mu[s]);
    }
    return mat_mul(row, w.nu).at(0, 0);
}

WeightedAutomaton push_non_expanding(const WeightedAutomaton& w,
                                     const std::vector<std::optional<Sym>>& f,
                                     const Alphabet& target) {
    if (w.ring.kind != Semiring::NInf)
        throw Error("push_non_expanding: Ninf only");
    if (f.size() != w.alphabet.size())
        throw Error("push_non_expanding: map must cover every letter");
    std::size_t n = w.dim;
    Mat erased = Mat::zeros(n, n, w.ring);
    for (std::size_t b = 0; b < f.size(); ++b)
        if (!f[b]) erased = mat_add(erased, w.mu[b]);
    Mat m = star_matrix(erased);

    WeightedAutomaton out{w.ring, target, n, mat_mul(w.lambda, m), {}, w.nu};
    for (Sym a = 0; a < target.size(); ++a) {
        Mat sum = Mat::zeros(n, n, w.ring);
        for (std::size_t b = 0; b < f.size(); ++b)
            if (f[b] && *f[b] == a) sum = mat_add(sum, w.mu[b]);
        out.mu.push_back(mat_mul(sum, m));
    }
    return out;
}

WeightedAutomaton push_non_erasing(const WeightedAutomaton& w,
                                   const std::vector<Word>& f,
                                   const Alphabet& target) {
    if (w.ring.kind != Semiring::NInf) throw Error("push_non_erasing: Ninf only");
    if (f.size() != w.alphabet.size())
        throw Error("push_non_erasing: map must cover every letter");
    for (const Word& img : f)
        if (img.empty()) throw Error("push_non_erasing: erasing letter");

    std::size_t n = w.dim;
    // chain states per (letter with image length >= 2, base state, position)
    std::size_t dim = n;
    std::vector<std::size_t> chain_base(f.size(), 0);
    for (std::size_t b = 0; b < f.size(); ++b) {
        if (f[b].size() < 2) continue;
        chain_base[b] = dim;
        dim += n * (f[b].size() - 1);
    }
    auto chain_state = [&](std::size_t b, std::size_t i, std::size_t pos) {
        // pos in 1..|f(b)|-1
        return chain_base[b] + (pos - 1) * n + i;
    };

    Semiring r = w.ring;
    WeightedAutomaton out{r, target, dim, Mat::zeros(1, dim, r), {},
                          Mat::zeros(dim, 1, r)};
    for (std::size_t i = 0; i < n; ++i) {
        out.lambda.at(0, i) = w.lambda.at(0, i);
        out.nu.at(i, 0) = w.nu.at(i, 0);
    }
    for (Sym a = 0; a < target.size(); ++a) out.mu.push_back(Mat::zeros(dim, dim, r));

    for (std::size_t b = 0; b < f.size(); ++b) {
        const Word& img = f[b];
        if (img.size() == 1) {
            Mat& m = out.mu[img[0]];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m.at(i, j) = m.at(i, j) + w.mu[b].at(i, j);
            continue;
        }
        std::size_t last = img.size() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            out.mu[img[0]].at(i, chain_state(b, i, 1)) = SemiringValue::one(r);
            for (std::size_t p = 1; p < last; ++p)
                out.mu[img[p]].at(chain_state(b, i, p), chain_state(b, i, p + 1)) =
                    SemiringValue::one(r);
            for (std::size_t j = 0; j < n; ++j) {
                Mat& m = out.mu[img[last]];
                std::size_t src = chain_state(b, i, last);
                m.at(src, j) = m.at(src, j) + w.mu[b].at(i, j);
            }
        }
    }
    return out;
}

WeightedAutomaton push_homomorphism(const WeightedAutomaton& w,
                                    const std::vector<Word>& f,
                                    const Alphabet& target) {
    if (f.size() != w.alphabet.size())
        throw Error("push_homomorphism: map must cover every letter");
    // f = f2 ∘ f1 with f1 non-expanding (erases the ε letters) and f2
    // non-erasing (placeholder image for erased letters, never reachable).
    std::vector<std::optional<Sym>> f1;
    std::vector<Word> f2;
    for (std::size_t b = 0; b < f.size(); ++b) {
        if (f[b].empty()) {
            f1.push_back(std::nullopt);
            f2.push_back(Word{0});
        } else {
            f1.push_back(static_cast<Sym>(b));
            f2.push_back(f[b]);
        }
    }
    WeightedAutomaton mid = push_non_expanding(w, f1, w.alphabet);
    return push_non_erasing(mid, f2, target);
}

WeightedAutomaton counting_function(const NivatPresentation& r, const Dfa& l) {
    r.validate();
    if (l.alphabet() != r.sigma)
        throw AlphabetMismatch("counting_function: L not over sigma");
    Dfa sl = intersect(r.s, inverse_homomorphism(l, r.gamma, r.h2));
    return push_homomorphism(char_function(sl), r.h1, r.sigma);
}

WeightedAutomaton map_semiring(const WeightedAutomaton& w, Semiring target) {
    if (w.ring.kind != Semiring::NInf) throw Error("map_semiring: source must be Ninf");
    if (!target.finite()) throw Error("map_semiring: target must be finite");
    auto hom = [&](const SemiringValue& v) {
        return target.kind == Semiring::SkInf ? hom_threshold(v, target.param)
                                              : hom_modulo(v, target.param);
    };
    auto map_mat = [&](const Mat& m) {
        Mat out = Mat::zeros(m.rows(), m.cols(), target);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = hom(m.at(i, j));
        return out;
    };
    WeightedAutomaton out{target, w.alphabet, w.dim, map_mat(w.lambda), {},
                          map_mat(w.nu)};
    for (const Mat& m : w.mu) out.mu.push_back(map_mat(m));
    return out;
}

Dfa preimage_regular(const WeightedAutomaton& w,
                     const std::set<SemiringValue>& target) {
    if (!w.ring.finite())
        throw Error("preimage_regular: semiring must be finite");
    std::map<Mat, std::uint32_t> ids;
    std::vector<Mat> rows;
    auto intern = [&](Mat m) {
        auto [it, fresh] = ids.emplace(std::move(m),
                                       static_cast<std::uint32_t>(rows.size()));
        if (fresh) rows.push_back(it->first);
        return it->second;
    };
    intern(w.lambda);
    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    for (std::uint32_t i = 0; i < rows.size(); ++i) {
        if (rows.size() > 200000) throw ResourceLimit("preimage_regular: row blowup");
        Mat row = rows[i];
        acc.push_back(target.count(mat_mul(row, w.nu).at(0, 0)) > 0);
        for (Sym s = 0; s < w.alphabet.size(); ++s)
            delta.push_back(intern(mat_mul(row, w.mu[s])));
    }
    return Dfa(w.alphabet, static_cast<std::uint32_t>(rows.size()), std::move(delta),
               0, std::move(acc));
}

Dfa count_at_least(const NivatPresentation& r, const Dfa& l, unsigned k) {
    if (k == 0) return dfa_all(r.sigma);
    WeightedAutomaton w = map_semiring(counting_function(r, l), Semiring::sk(k));
    // an infinite witness set satisfies every threshold
    std::set<SemiringValue> target{SemiringValue::finite(Semiring::sk(k), k),
                                   SemiringValue::infinity(Semiring::sk(k))};
    return preimage_regular(w, target);
}

Dfa count_mod(const NivatPresentation& r, const Dfa& l, unsigned p, unsigned q) {
    if (q < 1 || p >= q) throw Error("count_mod: need 0 <= p < q");
    WeightedAutomaton w = map_semiring(counting_function(r, l), Semiring::zq(q));
    std::set<SemiringValue> target{SemiringValue::finite(Semiring::zq(q), p)};
    if (p == 0) target.insert(SemiringValue::finite(Semiring::zq(q), q));
    return preimage_regular(w, target);
}

std::string weighted_to_json(const WeightedAutomaton& w) {
    using nlohmann::ordered_json;
    auto mat_json = [](const Mat& m) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const SemiringValue& v = m.at(i, j);
                if (v.is_inf())
                    row.push_back("inf");
                else
                    row.push_back(v.finite_value().str());
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    ordered_json j;
    j["semiring"] = w.ring.str();
    j["lambda"] = mat_json(w.lambda)[0];
    ordered_json mu;
    for (Sym s = 0; s < w.alphabet.size(); ++s)
        mu[w.alphabet.label(s)] = mat_json(w.mu[s]);
    j["mu"] = std::move(mu);
    ordered_json nu = ordered_json::array();
    for (std::size_t i = 0; i < w.dim; ++i) nu.push_back(mat_json(w.nu)[i][0]);
    j["nu"] = std::move(nu);
    return j.dump();
}

}  // namespace subtess
