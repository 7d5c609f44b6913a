"""Application services shared by the command-line front end."""
