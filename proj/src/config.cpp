#include "phonocool/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phonocool/errors.hpp"

namespace phonocool {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Line bookkeeping: a SAX pre-pass records the line of every key and array
// element, keyed by JSON pointer. A newline is only counted once the character
// after it is read, because the lexer looks one character past every number.

class CountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIterator() = default;
    CountingIterator(const char* p, int* line, bool* pending) : p_(p), line_(line), pending_(pending) {}

    reference operator*() const {
        if (*pending_) {
            ++*line_;
            *pending_ = false;
        }
        return *p_;
    }
    CountingIterator& operator++() {
        if (*p_ == '\n') *pending_ = true;
        ++p_;
        return *this;
    }
    CountingIterator operator++(int) {
        auto tmp = *this;
        ++*this;
        return tmp;
    }
    bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
    bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

private:
    const char* p_{nullptr};
    int* line_{nullptr};
    bool* pending_{nullptr};
};

std::string escape_token(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

struct LineMapper : nlohmann::json_sax<json> {
    struct Frame {
        bool array{false};
        std::string key;
        std::size_t index{0};
    };

    explicit LineMapper(const int* line) : line_(line) {}

    std::map<std::string, int> lines;
    std::string error;
    std::size_t error_position{0};

    bool null() override { return element(); }
    bool boolean(bool) override { return element(); }
    bool number_integer(number_integer_t) override { return element(); }
    bool number_unsigned(number_unsigned_t) override { return element(); }
    bool number_float(number_float_t, const string_t&) override { return element(); }
    bool string(string_t&) override { return element(); }
    bool binary(binary_t&) override { return element(); }
    bool start_object(std::size_t) override {
        element();
        stack_.push_back({false, {}, 0});
        return true;
    }
    bool key(string_t& k) override {
        stack_.back().key = k;
        lines[path()] = *line_;
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override {
        element();
        stack_.push_back({true, {}, 0});
        return true;
    }
    bool end_array() override {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        error = ex.what();
        error_position = position;
        return false;
    }

private:
    bool element() {
        if (stack_.empty()) lines[""] = *line_;
        if (!stack_.empty() && stack_.back().array) {
            stack_.back().key = std::to_string(stack_.back().index++);
            lines[path()] = *line_;
        }
        return true;
    }
    std::string path() const {
        std::string p;
        for (const auto& f : stack_) p += "/" + escape_token(f.key);
        return p;
    }

    const int* line_;
    std::vector<Frame> stack_;
};

int line_at_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// ---------------------------------------------------------------------------

class Reader {
public:
    explicit Reader(std::map<std::string, int> lines) : lines_(std::move(lines)) {}

    int line(const std::string& ptr) const {
        auto it = lines_.find(ptr);
        return it == lines_.end() ? 0 : it->second;
    }

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        throw ConfigError(msg + " (at " + (ptr.empty() ? "/" : ptr) + ")", line(ptr));
    }

    void require_object(const json& v, const std::string& ptr) const {
        if (!v.is_object()) fail(ptr, "expected an object");
    }

    void allow(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> keys) const {
        require_object(obj, ptr);
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (auto k : keys) known = known || k == it.key();
            if (!known) fail(ptr + "/" + escape_token(it.key()), "unknown key '" + it.key() + "'");
        }
    }

    double number(const json& v, const std::string& ptr) const {
        if (!v.is_number()) fail(ptr, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(ptr, "number must be finite");
        return d;
    }

    int integer(const json& v, const std::string& ptr) const {
        if (!v.is_number_integer()) fail(ptr, "expected an integer");
        return v.get<int>();
    }

    std::string text(const json& v, const std::string& ptr) const {
        if (!v.is_string()) fail(ptr, "expected a string");
        return v.get<std::string>();
    }

    bool boolean(const json& v, const std::string& ptr) const {
        if (!v.is_boolean()) fail(ptr, "expected true or false");
        return v.get<bool>();
    }

private:
    std::map<std::string, int> lines_;
};

template <class F>
void with(const json& obj, const char* key, const std::string& ptr, F&& f) {
    auto it = obj.find(key);
    if (it != obj.end()) f(*it, ptr + "/" + key);
}

void check(bool ok, const std::string& field, const std::string& msg) {
    if (!ok) throw ConfigError(field + ": " + msg);
}

SweepConfig reproduce_profile(std::vector<double> omegas, std::vector<Method> methods,
                              const std::string& name) {
    SweepConfig c;
    c.profile = name;
    c.omega_list = std::move(omegas);
    c.methods = std::move(methods);
    c.mode = {ModeConfig::Kind::transient, 30.0, 0.05};
    c.routes = {RouteConfig{HeatRoute::counting_fd, 0.05, FdScheme::forward}};
    c.oracle.dt = 0.05;
    return c;
}

const std::vector<Method> kFig2Methods{Method::bloch_redfield, Method::secular,
                                       Method::phenomenological};

std::string method_key(Method m) { return std::string(to_string(m)); }

} // namespace

std::string_view to_string(SignConvention s) {
    return s == SignConvention::absorption_positive ? "absorption_positive" : "bath_gain_positive";
}

std::vector<double> SweepConfig::deltas() const {
    std::vector<double> d;
    if (delta_steps <= 1) {
        d.push_back(delta_min);
        return d;
    }
    for (int k = 0; k < delta_steps; ++k)
        d.push_back(delta_min + (delta_max - delta_min) * k / static_cast<double>(delta_steps - 1));
    return d;
}

bool SweepConfig::operator==(const SweepConfig& o) const {
    return profile == o.profile && e_man == o.e_man && gamma_rad == o.gamma_rad &&
           alpha == o.alpha && omega_c == o.omega_c && temperature == o.temperature &&
           delta_min == o.delta_min && delta_max == o.delta_max && delta_steps == o.delta_steps &&
           omega_list == o.omega_list && methods == o.methods && mode == o.mode &&
           routes == o.routes && include_shifts == o.include_shifts && sign == o.sign &&
           quad_tol == o.quad_tol && omega_max_factor == o.omega_max_factor &&
           pairing_tol == o.pairing_tol && oracle.t_mem == o.oracle.t_mem &&
           oracle.dt == o.oracle.dt && oracle.quad_points == o.oracle.quad_points;
}

void SweepConfig::validate() const {
    check(e_man > 0.0, "system.e_man", "must be > 0");
    check(gamma_rad >= 0.0, "system.gamma_rad", "must be >= 0");
    check(alpha >= 0.0, "bath.alpha", "must be >= 0");
    check(omega_c > 0.0, "bath.omega_c", "must be > 0");
    check(temperature > 0.0, "bath.temperature", "must be > 0");
    check(delta_steps >= 1, "delta.steps", "must be >= 1");
    check(delta_min <= delta_max, "delta.min", "must not exceed delta.max");
    check(!omega_list.empty(), "omega_list", "must not be empty");
    for (double w : omega_list) check(w >= 0.0 && std::isfinite(w), "omega_list", "entries must be >= 0");
    check(!methods.empty(), "methods", "must not be empty");
    check(std::set<Method>(methods.begin(), methods.end()).size() == methods.size(), "methods",
          "must not repeat");
    check(!routes.empty(), "heat_routes", "must not be empty");
    for (const auto& r : routes)
        check(r.route == HeatRoute::trace_formula || r.u_step > 0.0, "heat_routes.u_step", "must be > 0");
    check(mode.dt > 0.0, "mode.dt", "must be > 0");
    if (mode.kind == ModeConfig::Kind::transient)
        check(mode.t_end >= mode.dt, "mode.t_end", "must be at least one timestep");
    check(quad_tol > 0.0, "numerics.quad_tol", "must be > 0");
    check(omega_max_factor > 0.0, "numerics.omega_max_factor", "must be > 0");
    check(pairing_tol >= 0.0, "numerics.pairing_tol", "must be >= 0");
    check(oracle.t_mem > 0.0, "oracle.t_mem", "must be > 0");
    check(oracle.dt > 0.0, "oracle.dt", "must be > 0");
    check(oracle.quad_points >= 2, "oracle.quad_points", "must be >= 2");
}

std::vector<std::string> profile_names() {
    return {"paper-fig2",  "paper-fig2a", "paper-fig2b", "paper-fig2c",
            "paper-fig2d", "paper-fig3a", "paper-fig3b"};
}

SweepConfig profile_config(std::string_view name) {
    if (name == "paper-fig2") return SweepConfig{};
    if (name == "paper-fig2a") return reproduce_profile({0.01}, kFig2Methods, std::string(name));
    if (name == "paper-fig2b") return reproduce_profile({0.1}, kFig2Methods, std::string(name));
    if (name == "paper-fig2c") return reproduce_profile({0.5}, kFig2Methods, std::string(name));
    if (name == "paper-fig2d") return reproduce_profile({1.0}, kFig2Methods, std::string(name));
    if (name == "paper-fig3a")
        return reproduce_profile({0.5}, {Method::bloch_redfield, Method::tcl_oracle}, std::string(name));
    if (name == "paper-fig3b")
        return reproduce_profile({1.0}, {Method::bloch_redfield, Method::tcl_oracle}, std::string(name));
    throw ConfigError("unknown profile '" + std::string(name) + "'");
}

SweepConfig parse_config_string(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        SweepConfig c = profile_config("paper-fig2");
        c.validate();
        return c;
    }

    int line = 1;
    bool pending = false;
    LineMapper mapper(&line);
    const bool ok = json::sax_parse(CountingIterator(text.data(), &line, &pending),
                                    CountingIterator(text.data() + text.size(), &line, &pending), &mapper);
    if (!ok) throw ConfigError("malformed JSON: " + mapper.error, line_at_offset(text, mapper.error_position));

    const json doc = json::parse(text.begin(), text.end());
    const Reader rd(std::move(mapper.lines));
    rd.allow(doc, "", {"profile", "system", "bath", "delta", "omega_list", "methods", "mode",
                       "heat_routes", "include_shifts", "sign", "numerics", "oracle"});

    SweepConfig c;
    with(doc, "profile", "", [&](const json& v, const std::string& p) {
        const auto name = rd.text(v, p);
        try {
            c = profile_config(name);
        } catch (const ConfigError& e) {
            rd.fail(p, e.what());
        }
    });

    with(doc, "system", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"e_man", "gamma_rad"});
        with(s, "e_man", p, [&](const json& v, const std::string& q) { c.e_man = rd.number(v, q); });
        with(s, "gamma_rad", p, [&](const json& v, const std::string& q) { c.gamma_rad = rd.number(v, q); });
    });
    with(doc, "bath", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"alpha", "omega_c", "temperature"});
        with(s, "alpha", p, [&](const json& v, const std::string& q) { c.alpha = rd.number(v, q); });
        with(s, "omega_c", p, [&](const json& v, const std::string& q) { c.omega_c = rd.number(v, q); });
        with(s, "temperature", p, [&](const json& v, const std::string& q) { c.temperature = rd.number(v, q); });
    });
    with(doc, "delta", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"min", "max", "steps"});
        with(s, "min", p, [&](const json& v, const std::string& q) { c.delta_min = rd.number(v, q); });
        with(s, "max", p, [&](const json& v, const std::string& q) { c.delta_max = rd.number(v, q); });
        with(s, "steps", p, [&](const json& v, const std::string& q) { c.delta_steps = rd.integer(v, q); });
    });
    with(doc, "omega_list", "", [&](const json& v, const std::string& p) {
        if (!v.is_array()) rd.fail(p, "expected an array of numbers");
        c.omega_list.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto q = p + "/" + std::to_string(i);
            const double w = rd.number(v[i], q);
            if (w < 0.0) rd.fail(q, "Rabi frequencies must be >= 0");
            c.omega_list.push_back(w);
        }
    });
    with(doc, "methods", "", [&](const json& v, const std::string& p) {
        if (!v.is_array()) rd.fail(p, "expected an array of method names");
        c.methods.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto q = p + "/" + std::to_string(i);
            try {
                c.methods.push_back(method_from_string(rd.text(v[i], q)));
            } catch (const InvalidArgument& e) {
                rd.fail(q, e.what());
            }
        }
    });
    with(doc, "mode", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"type", "t_end", "dt"});
        with(s, "type", p, [&](const json& v, const std::string& q) {
            const auto t = rd.text(v, q);
            if (t == "steady") c.mode.kind = ModeConfig::Kind::steady;
            else if (t == "transient") c.mode.kind = ModeConfig::Kind::transient;
            else rd.fail(q, "mode.type must be 'steady' or 'transient'");
        });
        with(s, "t_end", p, [&](const json& v, const std::string& q) {
            c.mode.t_end = rd.number(v, q);
            if (c.mode.t_end <= 0.0) rd.fail(q, "must be > 0");
        });
        with(s, "dt", p, [&](const json& v, const std::string& q) {
            c.mode.dt = rd.number(v, q);
            if (c.mode.dt <= 0.0) rd.fail(q, "must be > 0");
        });
    });
    with(doc, "heat_routes", "", [&](const json& v, const std::string& p) {
        if (!v.is_array()) rd.fail(p, "expected an array of route objects");
        c.routes.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto q = p + "/" + std::to_string(i);
            rd.allow(v[i], q, {"type", "u_step", "scheme"});
            RouteConfig r;
            with(v[i], "type", q, [&](const json& x, const std::string& y) {
                try {
                    r.route = route_from_string(rd.text(x, y));
                } catch (const InvalidArgument& e) {
                    rd.fail(y, e.what());
                }
            });
            with(v[i], "u_step", q, [&](const json& x, const std::string& y) {
                r.u_step = rd.number(x, y);
                if (r.u_step <= 0.0) rd.fail(y, "must be > 0");
            });
            with(v[i], "scheme", q, [&](const json& x, const std::string& y) {
                try {
                    r.scheme = scheme_from_string(rd.text(x, y));
                } catch (const InvalidArgument& e) {
                    rd.fail(y, e.what());
                }
            });
            c.routes.push_back(r);
        }
    });
    with(doc, "include_shifts", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"bloch_redfield", "secular", "tcl_oracle"});
        for (Method m : {Method::bloch_redfield, Method::secular, Method::tcl_oracle}) {
            with(s, method_key(m).c_str(), p, [&](const json& v, const std::string& q) {
                c.include_shifts[static_cast<std::size_t>(m)] = rd.boolean(v, q);
            });
        }
    });
    with(doc, "sign", "", [&](const json& v, const std::string& p) {
        const auto s = rd.text(v, p);
        if (s == "absorption_positive") c.sign = SignConvention::absorption_positive;
        else if (s == "bath_gain_positive") c.sign = SignConvention::bath_gain_positive;
        else rd.fail(p, "sign must be 'absorption_positive' or 'bath_gain_positive'");
    });
    with(doc, "numerics", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"quad_tol", "omega_max_factor", "pairing_tol"});
        with(s, "quad_tol", p, [&](const json& v, const std::string& q) {
            c.quad_tol = rd.number(v, q);
            if (c.quad_tol <= 0.0) rd.fail(q, "must be > 0");
        });
        with(s, "omega_max_factor", p, [&](const json& v, const std::string& q) {
            c.omega_max_factor = rd.number(v, q);
            if (c.omega_max_factor <= 0.0) rd.fail(q, "must be > 0");
        });
        with(s, "pairing_tol", p, [&](const json& v, const std::string& q) {
            c.pairing_tol = rd.number(v, q);
            if (c.pairing_tol < 0.0) rd.fail(q, "must be >= 0");
        });
    });
    with(doc, "oracle", "", [&](const json& s, const std::string& p) {
        rd.allow(s, p, {"t_mem", "dt", "quad_points"});
        with(s, "t_mem", p, [&](const json& v, const std::string& q) {
            c.oracle.t_mem = rd.number(v, q);
            if (c.oracle.t_mem <= 0.0) rd.fail(q, "must be > 0");
        });
        with(s, "dt", p, [&](const json& v, const std::string& q) {
            c.oracle.dt = rd.number(v, q);
            if (c.oracle.dt <= 0.0) rd.fail(q, "must be > 0");
        });
        with(s, "quad_points", p, [&](const json& v, const std::string& q) {
            c.oracle.quad_points = rd.integer(v, q);
            if (c.oracle.quad_points < 2) rd.fail(q, "must be >= 2");
        });
    });

    // Range checks that span several fields carry the line of the first one named.
    try {
        c.validate();
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        const auto field = what.substr(0, what.find(':'));
        std::string ptr = "/" + field;
        std::replace(ptr.begin(), ptr.end(), '.', '/');
        int at = rd.line(ptr);
        while (at == 0 && !ptr.empty()) {
            ptr.erase(ptr.rfind('/'));
            at = rd.line(ptr);
        }
        throw ConfigError(what, at);
    }
    return c;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading config file", path);
    return parse_config_string(ss.str());
}

std::string serialize_config(const SweepConfig& c) {
    json j;
    j["profile"] = c.profile;
    j["system"] = {{"e_man", c.e_man}, {"gamma_rad", c.gamma_rad}};
    j["bath"] = {{"alpha", c.alpha}, {"omega_c", c.omega_c}, {"temperature", c.temperature}};
    j["delta"] = {{"min", c.delta_min}, {"max", c.delta_max}, {"steps", c.delta_steps}};
    j["omega_list"] = c.omega_list;
    j["methods"] = json::array();
    for (Method m : c.methods) j["methods"].push_back(method_key(m));
    j["mode"] = {{"type", c.mode.kind == ModeConfig::Kind::steady ? "steady" : "transient"},
                 {"t_end", c.mode.t_end},
                 {"dt", c.mode.dt}};
    j["heat_routes"] = json::array();
    for (const auto& r : c.routes) {
        j["heat_routes"].push_back({{"type", std::string(to_string(r.route))},
                                    {"u_step", r.u_step},
                                    {"scheme", std::string(to_string(r.scheme))}});
    }
    j["include_shifts"] = {{"bloch_redfield", c.shifts_for(Method::bloch_redfield)},
                           {"secular", c.shifts_for(Method::secular)},
                           {"tcl_oracle", c.shifts_for(Method::tcl_oracle)}};
    j["sign"] = std::string(to_string(c.sign));
    j["numerics"] = {{"quad_tol", c.quad_tol},
                     {"omega_max_factor", c.omega_max_factor},
                     {"pairing_tol", c.pairing_tol}};
    j["oracle"] = {{"t_mem", c.oracle.t_mem},
                   {"dt", c.oracle.dt},
                   {"quad_points", c.oracle.quad_points}};
    return j.dump(2) + "\n";
}

} // namespace phonocool
