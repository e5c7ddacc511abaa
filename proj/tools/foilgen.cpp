// CLI entry point (placeholder while modules land).
int main() { return 0; }
