import pbr.version

try:
    __version__ = pbr.version.VersionInfo('tree_partitions').version_string()
except Exception:
    __version__ = "0.0.0"
