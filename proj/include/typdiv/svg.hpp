#ifndef TYPDIV_SVG_HPP
#define TYPDIV_SVG_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace typdiv::svg {

// Fixed two-decimal formatting so identical inputs always produce
// identical bytes, independent of locale or platform.
std::string num(double v);

std::string escape(std::string_view text);

// Minimal element-by-element SVG 1.1 writer.
class Document {
public:
    Document(int width, int height);

    void open_group(std::string_view id);
    void close_group();
    void line(double x1, double y1, double x2, double y2, std::string_view stroke,
              double stroke_width = 1.0);
    void circle(double cx, double cy, double r, std::string_view fill);
    void rect(double x, double y, double w, double h, std::string_view fill);
    void text(double x, double y, std::string_view content, int font_size = 12,
              std::string_view anchor = "start", std::string_view fill = "#333333");

    std::string str() const;

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

private:
    int width_;
    int height_;
    std::string body_;
};

void write_file(const std::filesystem::path& path, const std::string& contents);

} // namespace typdiv::svg

#endif
