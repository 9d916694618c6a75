#pragma once

// JSON encodings for the wire formats: matrices, words, points, tables,
// algebraic numbers, and invariant reports.  Output uses insertion-ordered
// objects so identical inputs render byte-identically.

#include <string>
#include <vector>

#include <json.hpp>

#include "adicpl/errors.hpp"
#include "adicpl/invariants.hpp"
#include "adicpl/perron.hpp"
#include "adicpl/rational.hpp"
#include "adicpl/sft.hpp"
#include "adicpl/tables.hpp"

namespace adicpl {

using Json = nlohmann::ordered_json;

inline Json word_to_json(const Word& w) {
    Json j = Json::array();
    for (Symbol s : w) j.push_back(s);
    return j;
}

inline Word word_from_json(const Json& j) {
    if (!j.is_array()) throw error(errc::bad_format, "word must be an array of symbols");
    Word w;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw error(errc::bad_format, "word symbols must be integers");
        w.push_back(v.get<int>());
    }
    return w;
}

inline Json matrix_to_json(const TransitionMatrix& a) {
    Json rows = Json::array();
    for (int i = 0; i < a.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.size(); ++j) row.push_back(a.entry(i, j));
        rows.push_back(row);
    }
    return Json{{"n", a.size()}, {"rows", rows}};
}

inline TransitionMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows"))
        throw error(errc::bad_format, "matrix object must contain \"rows\"");
    const Json& rows = j.at("rows");
    if (!rows.is_array()) throw error(errc::bad_format, "matrix rows must be an array");
    std::vector<std::vector<int>> m;
    for (const auto& r : rows) {
        if (!r.is_array()) throw error(errc::bad_format, "matrix row must be an array");
        std::vector<int> row;
        for (const auto& v : r) {
            if (!v.is_number_integer())
                throw error(errc::bad_format, "matrix entries must be integers");
            row.push_back(v.get<int>());
        }
        m.push_back(std::move(row));
    }
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(m.size()))
        throw error(errc::bad_format, "matrix size field disagrees with rows");
    return TransitionMatrix::validate(m);
}

inline Json point_to_json(const EppPoint& x) {
    return Json{{"preamble", word_to_json(x.preamble())}, {"cycle", word_to_json(x.cycle())}};
}

inline EppPoint point_from_json(const TransitionMatrix& a, const Json& j) {
    if (!j.is_object() || !j.contains("cycle"))
        throw error(errc::bad_format, "point object must contain \"cycle\"");
    Word pre = j.contains("preamble") ? word_from_json(j.at("preamble")) : Word{};
    Word cyc = word_from_json(j.at("cycle"));
    EppPoint x(std::move(pre), std::move(cyc));
    require_valid_point(a, x);
    return x;
}

inline Json table_to_json(const AdicTable& t) {
    Json rows = Json::array();
    for (const TableRow& r : t.rows())
        rows.push_back(Json{{"domain", word_to_json(r.domain)}, {"range", word_to_json(r.range)}});
    return Json{{"rows", rows}};
}

inline AdicTable table_from_json(const TransitionMatrix& a, const Json& j) {
    if (!j.is_object() || !j.contains("rows"))
        throw error(errc::bad_format, "table object must contain \"rows\"");
    std::vector<TableRow> rows;
    for (const auto& r : j.at("rows")) {
        if (!r.is_object() || !r.contains("domain") || !r.contains("range"))
            throw error(errc::bad_format, "table row must contain \"domain\" and \"range\"");
        rows.push_back({word_from_json(r.at("domain")), word_from_json(r.at("range"))});
    }
    return AdicTable::validate(a, std::move(rows));
}

inline Json algebraic_to_json(const AlgebraicNumber& x, int digits) {
    Json poly = Json::array();
    for (const mpq_class& c : x.coeffs()) poly.push_back(rational_string(c));
    if (x.coeffs().empty()) poly.push_back("0");
    return Json{{"poly", poly}, {"approx", x.decimal(digits)}};
}

inline AlgebraicNumber algebraic_from_json(const PerronData& pd, const Json& j) {
    if (j.is_string()) return pd.rational(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return pd.rational(mpq_class(j.get<long>()));
    if (!j.is_object() || !j.contains("poly"))
        throw error(errc::bad_format, "number must be a rational string or {\"poly\": ...}");
    QPoly c;
    for (const auto& v : j.at("poly")) {
        if (!v.is_string()) throw error(errc::bad_format, "poly coefficients must be strings");
        c.push_back(parse_rational(v.get<std::string>()));
    }
    return AlgebraicNumber(pd.system(), std::move(c));
}

inline Json integer_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Json min_poly_to_json(const ZPoly& p) {
    Json j = Json::array();
    for (const mpz_class& c : p) j.push_back(integer_to_json(c));
    return j;
}

inline Json invariants_to_json(const TransitionMatrix& a) {
    AbelianGroup g = k0_group(a);
    Json torsion = Json::array();
    for (const mpz_class& d : g.torsion) torsion.push_back(integer_to_json(d));
    return Json{{"free_rank", g.free_rank},
                {"torsion", torsion},
                {"det_id_minus_A", integer_to_json(det_id_minus_a(a))},
                {"simple", simplicity_verdict(a) == Simplicity::Simple}};
}

inline Json error_to_json(const error& e) {
    return Json{{"error", Json{{"code", errc_name(e.code())}, {"message", e.what()}}}};
}

} // namespace adicpl
