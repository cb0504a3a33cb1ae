#include "cycleforge/perturb.hpp"

#include <json.hpp>

#include <sstream>

namespace cf {

std::string system_name(SystemFamily f) {
    switch (f) {
        case SystemFamily::S1: return "S1";
        case SystemFamily::S2: return "S2";
        case SystemFamily::S3: return "S3";
    }
    throw DomainError("system: bad family tag");
}

SystemFamily system_from_name(const std::string& name) {
    if (name == "S1" || name == "s1") return SystemFamily::S1;
    if (name == "S2" || name == "s2") return SystemFamily::S2;
    if (name == "S3" || name == "s3") return SystemFamily::S3;
    throw DomainError("system: unknown family \"" + name + "\"");
}

std::string ParamId::str() const {
    std::ostringstream os;
    os << (is_q ? 'q' : 'p') << (side > 0 ? '+' : '-') << order << ',' << i << ',' << j;
    return os.str();
}

ParamId ParamId::parse(const std::string& name) {
    auto bad = [&]() { return DomainError("coefficient name \"" + name + "\" is malformed"); };
    if (name.size() < 7) throw bad();
    ParamId id;
    if (name[0] == 'q') id.is_q = true;
    else if (name[0] != 'p') throw bad();
    if (name[1] == '-') id.side = -1;
    else if (name[1] != '+') throw bad();
    int fields[3];
    std::size_t pos = 2;
    for (int f = 0; f < 3; ++f) {
        if (pos >= name.size() || !std::isdigit(static_cast<unsigned char>(name[pos]))) throw bad();
        fields[f] = name[pos] - '0';
        ++pos;
        if (f < 2) {
            if (pos >= name.size() || name[pos] != ',') throw bad();
            ++pos;
        }
    }
    if (pos != name.size()) throw bad();
    id.order = fields[0];
    id.i = fields[1];
    id.j = fields[2];
    if (id.order < 1 || id.order > 2 || id.i + id.j > 2) throw bad();
    return id;
}

std::vector<ParamId> order_params(int order) {
    std::vector<ParamId> out;
    for (int q = 0; q < 2; ++q)
        for (int side : {+1, -1})
            for (int j = 0; j <= 2; ++j)
                for (int i = 0; i + j <= 2; ++i)
                    out.push_back(ParamId{q == 1, side, order, i, j});
    return out;
}

Rat PerturbationSpec::coef(const ParamId& id) const {
    auto it = coeffs.find(id);
    return it == coeffs.end() ? Rat(0) : it->second;
}

void PerturbationSpec::set(const std::string& name, const Rat& v) {
    coeffs[ParamId::parse(name)] = v;
}

void PerturbationSpec::validate() const {
    if (alpha_over_pi != Rat(0) && alpha_over_pi != Rat(-1, 3) && alpha_over_pi != Rat(-1, 2))
        throw DomainError("spec: switching angle must be 0, -pi/3, or -pi/2");
    for (const auto& [id, v] : coeffs) {
        if (id.order < 1 || id.order > 2)
            throw DomainError("spec: order of " + id.str() + " outside {1, 2}");
        if (id.i < 0 || id.j < 0 || id.i + id.j > 2)
            throw DomainError("spec: monomial of " + id.str() + " exceeds degree 2");
        if (origin_fixed && id.i == 0 && id.j == 0 && v != 0)
            throw DomainError("spec: nonzero constant " + id.str() + " with origin_fixed");
    }
}

std::map<ParamId, Rat> parse_coeff_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("coefficient file: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("coefficient file: expected a JSON object");
    std::map<ParamId, Rat> out;
    for (const auto& [key, val] : j.items()) {
        if (!val.is_string())
            throw DomainError("coefficient " + key + ": value must be a rational string");
        auto r = parse_rat(val.get<std::string>());
        if (!r) throw DomainError("coefficient " + key + ": bad rational \"" +
                                  val.get<std::string>() + "\"");
        out[ParamId::parse(key)] = *r;
    }
    return out;
}

} // namespace cf
