#include "localgw/scalar_json.hpp"

#include <stdexcept>

namespace localgw {

using nlohmann::json;

namespace {

mpz_class parse_integer(const json& j) {
    mpz_class v;
    if (j.is_string()) {
        if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("malformed integer in scalar JSON");
        return v;
    }
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    throw std::invalid_argument("malformed integer in scalar JSON");
}

std::uint32_t parse_exponent(const json& t, const char* key) {
    if (!t.contains(key)) return 0;
    const auto& e = t.at(key);
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
        throw std::invalid_argument("malformed exponent in scalar JSON");
    const auto v = e.get<unsigned long long>();
    if (v > Monomial::kMaxExponent) throw std::invalid_argument("exponent out of range in scalar JSON");
    return static_cast<std::uint32_t>(v);
}

}  // namespace

json poly_to_json(const MultiPoly& p) {
    json out = json::array();
    for (const auto& t : p.terms()) {
        const Monomial m = t.monomial();
        out.push_back({{"c",
                        {t.coeff.re().get_num().get_str(), t.coeff.re().get_den().get_str(),
                         t.coeff.im().get_num().get_str(), t.coeff.im().get_den().get_str()}},
                       {"t1", m.e[0]},
                       {"t2", m.e[1]},
                       {"s", m.e[2]}});
    }
    return out;
}

MultiPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("c") || !t.at("c").is_array() || t.at("c").size() != 4)
            throw std::invalid_argument("malformed term in scalar JSON");
        const auto& c = t.at("c");
        mpz_class rd = parse_integer(c[1]), id = parse_integer(c[3]);
        if (rd == 0 || id == 0) throw std::invalid_argument("zero denominator in scalar JSON");
        mpq_class re(parse_integer(c[0]), rd), im(parse_integer(c[2]), id);
        Monomial m(parse_exponent(t, "t1"), parse_exponent(t, "t2"), parse_exponent(t, "s"));
        terms.push_back({m.key(), GaussianRational(re, im)});
    }
    return MultiPoly::from_terms(std::move(terms));
}

json scalar_to_json(const Scalar& s) { return {{"num", poly_to_json(s.num())}, {"den", poly_to_json(s.den())}}; }

Scalar scalar_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("scalar JSON needs num and den");
    MultiPoly den = poly_from_json(j.at("den"));
    if (den.is_zero()) throw std::invalid_argument("zero denominator in scalar JSON");
    return Scalar(poly_from_json(j.at("num")), den);
}

json series_to_json(const USeries& s) {
    json cs = json::array();
    for (const auto& c : s.coeffs()) cs.push_back(scalar_to_json(c));
    return {{"offset", s.offset()}, {"precision", s.precision()}, {"coeffs", cs}};
}

USeries series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("offset") || !j.contains("coeffs"))
        throw std::invalid_argument("series JSON needs offset and coeffs");
    std::vector<Scalar> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(scalar_from_json(c));
    return USeries(j.at("offset").get<int>(), std::move(cs));
}

}  // namespace localgw
