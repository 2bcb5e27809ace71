#include "typdiv/svg.hpp"

#include <cstdio>
#include <fstream>

#include "typdiv/error.hpp"

namespace typdiv::svg {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

Document::Document(int width, int height) : width_(width), height_(height) {}

void Document::open_group(std::string_view id) {
    body_ += "<g id=\"" + escape(id) + "\">\n";
}

void Document::close_group() { body_ += "</g>\n"; }

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke,
                    double stroke_width) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
             num(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
             num(stroke_width) + "\"/>\n";
}

void Document::circle(double cx, double cy, double r, std::string_view fill) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
             "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void Document::rect(double x, double y, double w, double h, std::string_view fill) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void Document::text(double x, double y, std::string_view content, int font_size,
                    std::string_view anchor, std::string_view fill) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
             std::to_string(font_size) + "\" font-family=\"sans-serif\" text-anchor=\"" +
             std::string(anchor) + "\" fill=\"" + std::string(fill) + "\">" + escape(content) +
             "</text>\n";
}

std::string Document::str() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
           std::to_string(width_) + " " + std::to_string(height_) + "\">\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << contents;
    if (!out) throw IoError("error writing file: " + path.string());
}

} // namespace typdiv::svg
