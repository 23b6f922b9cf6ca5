// Copyright 2026 The qftdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qftdyn/version.hpp"

namespace qftdyn::tools {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const {
        return kLeft + (x1 == x0 ? 0.5 : (x - x0) / (x1 - x0)) * (kWidth - kLeft - kRight);
    }
    double py(double y) const {
        return kHeight - kBottom - (y1 == y0 ? 0.5 : (y - y0) / (y1 - y0)) * (kHeight - kTop - kBottom);
    }
};

void open_document(std::ostringstream &out, const std::string &title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
}

void draw_axes(std::ostringstream &out, const Frame &f, const std::string &x_label, const std::string &y_label,
               const std::vector<double> &x_ticks, const std::vector<double> &y_ticks) {
    double left = f.px(f.x0);
    double right = f.px(f.x1);
    double bottom = f.py(f.y0);
    double top = f.py(f.y1);
    out << "<g stroke=\"#444\" fill=\"none\"><path d=\"M" << fixed(left) << ' ' << fixed(top) << " V"
        << fixed(bottom) << " H" << fixed(right) << "\"/></g>\n";
    out << "<g fill=\"#222\">\n";
    for (double t : x_ticks) {
        out << "<text x=\"" << fixed(f.px(t)) << "\" y=\"" << fixed(bottom + 18) << "\" text-anchor=\"middle\">"
            << format_number(t) << "</text>\n";
    }
    for (double t : y_ticks) {
        out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(f.py(t) + 4) << "\" text-anchor=\"end\">"
            << format_number(t) << "</text>\n";
        out << "<line x1=\"" << fixed(left) << "\" x2=\"" << fixed(right) << "\" y1=\"" << fixed(f.py(t))
            << "\" y2=\"" << fixed(f.py(t)) << "\" stroke=\"#ddd\"/>\n";
    }
    out << "<text x=\"" << fixed((left + right) / 2) << "\" y=\"" << fixed(kHeight - 18)
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(18 " << fixed((top + bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label) << "</text>\n";
    out << "</g>\n";
}

void draw_legend(std::ostringstream &out, const std::vector<ChartSeries> &series) {
    double x = kWidth - kRight + 16;
    double y = kTop + 10;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char *color = kPalette[i % std::size(kPalette)];
        out << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y + 18 * i - 9) << "\" width=\"14\" height=\"10\" fill=\""
            << color << "\"/>\n";
        out << "<text x=\"" << fixed(x + 20) << "\" y=\"" << fixed(y + 18 * i) << "\">" << escape(series[i].name)
            << "</text>\n";
    }
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string provenance_header(const ExperimentConfig &config) {
    return "# qftdyn " + std::string(version()) + "\n# config_hash " + config_hash(config) + "\n";
}

void write_file(const std::string &path, const std::string &content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed while writing '" + path + "'");
    }
}

std::string svg_line_chart(const std::string &title, const std::string &x_label, const std::string &y_label,
                           const std::vector<ChartSeries> &series, double y_min, double y_max) {
    Frame f{0, 1, y_min, y_max};
    bool first = true;
    std::vector<double> xs;
    for (const auto &s : series) {
        for (double x : s.x) {
            f.x0 = first ? x : std::min(f.x0, x);
            f.x1 = first ? x : std::max(f.x1, x);
            first = false;
            xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> y_ticks;
    for (int i = 0; i <= 5; ++i) {
        y_ticks.push_back(y_min + (y_max - y_min) * i / 5.0);
    }

    std::ostringstream out;
    open_document(out, title);
    draw_axes(out, f, x_label, y_label, xs, y_ticks);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto &s = series[i];
        const char *color = kPalette[i % std::size(kPalette)];
        if (!s.low.empty() && s.low.size() == s.x.size() && s.high.size() == s.x.size()) {
            out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                out << fixed(f.px(s.x[k])) << ',' << fixed(f.py(s.high[k])) << ' ';
            }
            for (std::size_t k = s.x.size(); k-- > 0;) {
                out << fixed(f.px(s.x[k])) << ',' << fixed(f.py(s.low[k])) << ' ';
            }
            out << "\"/>\n";
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            out << fixed(f.px(s.x[k])) << ',' << fixed(f.py(s.y[k])) << ' ';
        }
        out << "\"/>\n";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            out << "<circle cx=\"" << fixed(f.px(s.x[k])) << "\" cy=\"" << fixed(f.py(s.y[k]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }
    draw_legend(out, series);
    out << "</svg>\n";
    return out.str();
}

std::string svg_histogram(const std::string &title, const std::string &x_label,
                          const std::vector<ChartSeries> &series) {
    double bins = 1;
    double y_max = 0;
    for (const auto &s : series) {
        bins = std::max(bins, static_cast<double>(s.y.size()));
        for (double y : s.y) {
            y_max = std::max(y_max, y);
        }
    }
    if (y_max <= 0) {
        y_max = 1;
    }
    Frame f{0, bins, 0, y_max * 1.05};
    std::vector<double> x_ticks;
    for (int i = 0; i <= 4; ++i) {
        x_ticks.push_back(bins * i / 4.0);
    }
    std::vector<double> y_ticks;
    for (int i = 0; i <= 4; ++i) {
        y_ticks.push_back(f.y1 * i / 4.0);
    }

    std::ostringstream out;
    open_document(out, title);
    draw_axes(out, f, x_label, "probability", x_ticks, y_ticks);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto &s = series[i];
        const char *color = kPalette[i % std::size(kPalette)];
        out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" stroke-opacity=\"0.85\" d=\"M"
            << fixed(f.px(0)) << ' ' << fixed(f.py(0));
        for (std::size_t k = 0; k < s.y.size(); ++k) {
            out << " V" << fixed(f.py(s.y[k])) << " H" << fixed(f.px(static_cast<double>(k + 1)));
        }
        out << " V" << fixed(f.py(0)) << "\"/>\n";
    }
    draw_legend(out, series);
    out << "</svg>\n";
    return out.str();
}

}  // namespace qftdyn::tools
