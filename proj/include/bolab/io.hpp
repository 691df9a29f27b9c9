#ifndef BOLAB_IO_HPP
#define BOLAB_IO_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bolab {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// CSV with a header row, written to a temp file and renamed into place on
/// close (partially written outputs never appear under the final name).
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    /// Flush and rename into place; called by the destructor if omitted.
    void close();

  private:
    std::string path_, tmp_;
    std::string buffer_;
    bool closed_ = false;
};

/// Write a string to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Flat "key = value" configuration with '#' comments.
class Config {
  public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const; // throws config_error if absent
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    /// Comma-separated list of doubles.
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

/// Geometric range helper: count values from lo to hi inclusive.
std::vector<double> geometric_range(double lo, double hi, int count);

} // namespace bolab

#endif
