// replay: load a scene, feed it a pointer script, write the final scene and
// SVG snapshots. Diagnostics go to stderr only; data goes to files.
//
// Exit codes: 0 ok, 2 bad arguments, 3 scene/script parse error, 4 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "movable/movable.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitIo = 4;

struct IoFailure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure{"cannot read " + path};
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure{"cannot open " + path.string() + " for writing"};
  out << data;
  out.close();
  if (!out) throw IoFailure{"cannot write " + path.string()};
}

std::string frame_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.svg", index);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replay a pointer script against a movable-graphics scene"};
  app.name("replay");
  std::string scene_path;
  std::optional<std::string> script_path;
  std::optional<std::string> out_path;
  std::optional<std::string> svg_path;
  std::size_t snapshot_every = 0;
  app.add_option("--scene", scene_path, "Scene file to load")->required();
  app.add_option("--script", script_path, "Pointer script to apply");
  app.add_option("--out", out_path, "Where to write the final scene");
  app.add_option("--svg", svg_path, "Where to write the final SVG; frames go next to it");
  app.add_option("--snapshot-every", snapshot_every, "Write frame_NNNNNN.svg every N events (0 = final only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "replay: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (snapshot_every > 0 && !svg_path) {
    std::cerr << "replay: --snapshot-every needs --svg to know where frames go\n" << app.help();
    return kExitUsage;
  }

  std::string current_file = scene_path;
  try {
    movable::Scene scene = movable::load_scene(read_file(scene_path));
    movable::EventScript script;
    if (script_path) {
      current_file = *script_path;
      script = movable::parse_script(read_file(*script_path));
    }

    const std::filesystem::path frame_dir =
        svg_path ? std::filesystem::path(*svg_path).parent_path() : std::filesystem::path{};
    std::size_t frames = 0;
    auto result = movable::apply_script(std::move(scene), script, [&](std::size_t n, const movable::Scene& s) {
      if (snapshot_every > 0 && n % snapshot_every == 0) {
        write_file(frame_dir / frame_name(++frames), movable::render_svg(s));
      }
    });

    if (out_path) write_file(*out_path, movable::save_scene(result.scene));
    if (svg_path) write_file(*svg_path, movable::render_svg(result.scene));
  } catch (const IoFailure& e) {
    std::cerr << "replay: " << e.message << "\n";
    return kExitIo;
  } catch (const movable::FormatError& e) {
    std::cerr << "replay: " << current_file << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const movable::ValidationError& e) {
    std::cerr << "replay: " << current_file << ": " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
