"""CLI controllers, one per subcommand."""
