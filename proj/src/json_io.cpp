#include <mcon/json_io.hpp>

#include <nlohmann/json.hpp>

namespace mcon {

json to_json(const scalar &s) {
    if (s.is_exact()) return json{{"re", s.re_q().get_str()}, {"im", s.im_q().get_str()}};
    auto z = s.to_complex();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

scalar scalar_from_json(const json &j, backend tag) {
    if (!j.contains("re") || !j.contains("im")) throw config_error("scalar JSON needs re/im");
    if (tag == backend::exact) {
        if (!j["re"].is_string() || !j["im"].is_string())
            throw config_error("exact scalars serialize as rational strings");
        return scalar::parse_exact(j["re"].get<std::string>(), j["im"].get<std::string>());
    }
    return scalar::floating(j["re"].get<double>(), j["im"].get<double>());
}

namespace {

json scalars_to_json(const std::vector<scalar> &v) {
    json a = json::array();
    for (const auto &s : v) a.push_back(to_json(s));
    return a;
}

std::vector<scalar> scalars_from_json(const json &j, backend tag) {
    std::vector<scalar> v;
    for (const auto &e : j) v.push_back(scalar_from_json(e, tag));
    return v;
}

json matrix_to_json(const matrix2 &m) {
    return json::array({json::array({to_json(m.a()), to_json(m.b())}),
                        json::array({to_json(m.c()), to_json(m.d())})});
}

matrix2 matrix_from_json(const json &j, backend tag) {
    return matrix2(scalar_from_json(j.at(0).at(0), tag), scalar_from_json(j.at(0).at(1), tag),
                   scalar_from_json(j.at(1).at(0), tag), scalar_from_json(j.at(1).at(1), tag));
}

json poly_to_json(const poly &p) { return scalars_to_json(p.coeffs()); }

poly poly_from_json(const json &j, backend tag) { return poly(tag, scalars_from_json(j, tag)); }

} // namespace

json to_json(const fuchsian_system &sys) {
    json a = json::array();
    for (const auto &m : sys.residues) a.push_back(matrix_to_json(m));
    return json{{"backend", sys.tag() == backend::exact ? "exact" : "float"},
                {"t", scalars_to_json(sys.poles.t())},
                {"theta", scalars_to_json(sys.theta)},
                {"A", a}};
}

fuchsian_system fuchsian_from_json(const json &j, backend tag) {
    pole_config poles(scalars_from_json(j.at("t"), tag));
    auto theta = scalars_from_json(j.at("theta"), tag);
    const json &a = j.at("A");
    if (a.size() != 4) throw config_error("fuchsian system needs 4 residue matrices");
    std::array<matrix2, 4> res{matrix_from_json(a.at(0), tag), matrix_from_json(a.at(1), tag),
                               matrix_from_json(a.at(2), tag), matrix_from_json(a.at(3), tag)};
    return fuchsian_system(poles, res, theta);
}

json to_json(const cubic_point &p) {
    return json{{"X", json::array({to_json(p.x1), to_json(p.x2), to_json(p.x3)})},
                {"Y", to_json(p.y)}};
}

cubic_point cubic_point_from_json(const json &j, backend tag) {
    const json &x = j.at("X");
    return cubic_point{scalar_from_json(x.at(0), tag), scalar_from_json(x.at(1), tag),
                       scalar_from_json(x.at(2), tag), scalar_from_json(j.at("Y"), tag)};
}

json to_json(const log_connection &conn) {
    json residues = json::array();
    for (const auto &s : conn.all_poles()) residues.push_back(matrix_to_json(conn.omega.residue_at(s)));
    json pp = json::array({json::array({poly_to_json(conn.omega.at(0, 0).polynomial_part()),
                                        poly_to_json(conn.omega.at(0, 1).polynomial_part())}),
                           json::array({poly_to_json(conn.omega.at(1, 0).polynomial_part()),
                                        poly_to_json(conn.omega.at(1, 1).polynomial_part())})});
    json theta = json::array();
    for (int i = 0; i < conn.n(); ++i)
        theta.push_back(json::array({to_json(conn.spectral.plus(i)), to_json(conn.spectral.minus(i))}));
    json pars = json::array();
    for (const auto &l : conn.parabolics)
        pars.push_back(json{{"dir", json::array({to_json(l.x), to_json(l.y)})}, {"free", l.free_data}});
    return json{{"backend", conn.tag() == backend::exact ? "exact" : "float"},
                {"bundle", json::array({conn.bundle.d1, conn.bundle.d2})},
                {"t", scalars_to_json(conn.poles.t())},
                {"q", scalars_to_json(conn.apparent)},
                {"theta", theta},
                {"residues", residues},
                {"poly_part", pp},
                {"parabolics", pars}};
}

log_connection connection_from_json(const json &j, backend tag) {
    bundle_type bundle(j.at("bundle").at(0).get<int>(), j.at("bundle").at(1).get<int>());
    pole_config poles(scalars_from_json(j.at("t"), tag));
    std::vector<scalar> qs = scalars_from_json(j.at("q"), tag);
    std::vector<scalar> plus, minus;
    for (const auto &pair : j.at("theta")) {
        plus.push_back(scalar_from_json(pair.at(0), tag));
        minus.push_back(scalar_from_json(pair.at(1), tag));
    }
    spectral_data sp(plus, minus);
    std::vector<scalar> all = poles.t();
    all.insert(all.end(), qs.begin(), qs.end());
    const json &residues = j.at("residues");
    if (residues.size() != all.size()) throw config_error("residue count != pole count");
    conn_mat omega(tag);
    for (size_t k = 0; k < all.size(); ++k) {
        matrix2 r = matrix_from_json(residues.at(k), tag);
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj)
                if (!r.at(i, jj).is_zero())
                    omega.set(i, jj, omega.at(i, jj) + ratfun::simple_pole(all[k], r.at(i, jj)));
    }
    const json &pp = j.at("poly_part");
    for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
            omega.set(i, jj, omega.at(i, jj) + ratfun(poly_from_json(pp.at(static_cast<size_t>(i)).at(static_cast<size_t>(jj)), tag)));
    std::vector<parabolic> pars;
    if (j.contains("parabolics")) {
        for (const auto &e : j.at("parabolics")) {
            parabolic l(scalar_from_json(e.at("dir").at(0), tag),
                        scalar_from_json(e.at("dir").at(1), tag));
            l.free_data = e.value("free", false);
            pars.push_back(l);
        }
    } else {
        // legacy data: default every parabolic to the theta^+ eigendirection
        for (int i = 0; i < poles.n(); ++i) {
            matrix2 r = omega.residue_at(poles.t(i));
            if (r.is_scalar_matrix())
                throw config_error("scalar residue at t_" + std::to_string(i + 1) +
                                   " needs an explicit parabolic");
            scalar v0 = r.b(), v1 = sp.plus(i) - r.a();
            if (v0.is_zero() && v1.is_zero()) {
                v0 = sp.plus(i) - r.d();
                v1 = r.c();
            }
            pars.emplace_back(v0, v1);
        }
    }
    log_connection conn(bundle, poles, omega, sp, pars, qs);
    conn.validate();
    return conn;
}

json to_json(const pq_point &pt) {
    switch (pt.k) {
    case pq_point::kind::interior:
        return json{{"kind", "interior"}, {"q", to_json(pt.q)}, {"p", to_json(pt.p)}};
    case pq_point::kind::at_infinity_fiber:
        return json{{"kind", "at_infinity"}, {"y", to_json(pt.y)}};
    case pq_point::kind::exceptional:
        return json{{"kind", "exceptional"},
                    {"i", pt.pole_index},
                    {"sign", pt.sign_plus ? "+" : "-"},
                    {"inner", pt.inner_divisor},
                    {"fiber", to_json(pt.fiber)}};
    }
    throw config_error("bad chart point");
}

pq_point pq_point_from_json(const json &j, backend tag) {
    std::string kind = j.at("kind").get<std::string>();
    pq_point pt;
    if (kind == "interior") {
        pt.k = pq_point::kind::interior;
        pt.q = scalar_from_json(j.at("q"), tag);
        pt.p = scalar_from_json(j.at("p"), tag);
    } else if (kind == "at_infinity") {
        pt.k = pq_point::kind::at_infinity_fiber;
        pt.y = scalar_from_json(j.at("y"), tag);
    } else if (kind == "exceptional") {
        pt.k = pq_point::kind::exceptional;
        pt.pole_index = j.at("i").get<int>();
        pt.sign_plus = j.at("sign").get<std::string>() == "+";
        pt.inner_divisor = j.value("inner", false);
        pt.fiber = scalar_from_json(j.at("fiber"), tag);
    } else {
        throw config_error("unknown chart point kind: " + kind);
    }
    return pt;
}

json to_json(const garnier_point &pt) {
    json pairs = json::array();
    for (const auto &[q, p] : pt.pairs) pairs.push_back(json::array({to_json(q), to_json(p)}));
    return json{{"pairs", pairs}};
}

garnier_point garnier_point_from_json(const json &j, backend tag) {
    std::vector<std::pair<scalar, scalar>> pairs;
    for (const auto &e : j.at("pairs"))
        pairs.emplace_back(scalar_from_json(e.at(0), tag), scalar_from_json(e.at(1), tag));
    return garnier_point(pairs);
}

json to_json(const gauge_record &rec) {
    switch (rec.k) {
    case gauge_record::kind::constant: return json{{"kind", "constant"}, {"M", matrix_to_json(rec.m)}};
    case gauge_record::kind::lower_unipotent:
        return json{{"kind", "lower_unipotent"},
                    {"lambda1", to_json(rec.lambda1)},
                    {"lambda2", to_json(rec.lambda2)},
                    {"f", poly_to_json(rec.f)}};
    case gauge_record::kind::twist:
        return json{{"kind", "twist"}, {"k", rec.twist_k}, {"lambda", scalars_to_json(rec.lambda)}};
    case gauge_record::kind::elm_minus: return json{{"kind", "elm_minus"}, {"i", rec.pole_index}};
    case gauge_record::kind::elm_plus: return json{{"kind", "elm_plus"}, {"i", rec.pole_index}};
    case gauge_record::kind::elm_minus_apparent:
        return json{{"kind", "elm_minus_apparent"}, {"q", to_json(rec.apparent_pole)}};
    case gauge_record::kind::elm_plus_apparent:
        return json{{"kind", "elm_plus_apparent"}, {"q", to_json(rec.apparent_pole)}};
    }
    throw config_error("bad gauge record");
}

gauge_record gauge_record_from_json(const json &j, backend tag) {
    gauge_record rec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        rec.k = gauge_record::kind::constant;
        rec.m = matrix_from_json(j.at("M"), tag);
    } else if (kind == "lower_unipotent") {
        rec.k = gauge_record::kind::lower_unipotent;
        rec.lambda1 = scalar_from_json(j.at("lambda1"), tag);
        rec.lambda2 = scalar_from_json(j.at("lambda2"), tag);
        rec.f = poly_from_json(j.at("f"), tag);
    } else if (kind == "twist") {
        rec.k = gauge_record::kind::twist;
        rec.twist_k = j.at("k").get<int>();
        rec.lambda = scalars_from_json(j.at("lambda"), tag);
    } else if (kind == "elm_minus" || kind == "elm_plus") {
        rec.k = kind == "elm_minus" ? gauge_record::kind::elm_minus : gauge_record::kind::elm_plus;
        rec.pole_index = j.at("i").get<int>();
    } else if (kind == "elm_minus_apparent" || kind == "elm_plus_apparent") {
        rec.k = kind == "elm_minus_apparent" ? gauge_record::kind::elm_minus_apparent
                                             : gauge_record::kind::elm_plus_apparent;
        rec.apparent_pole = scalar_from_json(j.at("q"), tag);
    } else {
        throw config_error("unknown gauge move kind: " + kind);
    }
    return rec;
}

json to_json(const std::vector<gauge_record> &log) {
    json a = json::array();
    for (const auto &rec : log) a.push_back(to_json(rec));
    return a;
}

std::vector<gauge_record> move_log_from_json(const json &j, backend tag) {
    std::vector<gauge_record> log;
    for (const auto &e : j) log.push_back(gauge_record_from_json(e, tag));
    return log;
}

} // namespace mcon
