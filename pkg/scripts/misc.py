from colorama import init, Fore, Style


def info():
    init()
    print(f"\nThanks for your interest in {Fore.YELLOW}tiltkit{Style.RESET_ALL}!\n")
    print(
        f"{Fore.BLUE}poetry install --with lint,test,devel{Style.RESET_ALL}:"
        + " Install development-ready version of the package"
    )
    print(f"{Fore.BLUE}poetry env remove --all{Style.RESET_ALL}: Remove all virtual environments\n")
    print(f"{Fore.BLUE}poetry run poe info{Style.RESET_ALL}: Display this message again")
    print(f"{Fore.BLUE}poetry run poe lint{Style.RESET_ALL}: Run linters")
    print(f"{Fore.BLUE}poetry run poe format{Style.RESET_ALL}: Run formatters")
    print(f"{Fore.BLUE}poetry run poe test_no_cov{Style.RESET_ALL}: Run tests without coverage, skipping slow suites")
    print(f"{Fore.BLUE}poetry run poe test_slow{Style.RESET_ALL}: Run all tests, including the 100-instance suites")
    print(
        f"{Fore.BLUE}poetry run poe test_all{Style.RESET_ALL}:"
        + " Run all tests with coverage and prohibit skipping (closest to CI)"
    )
    print(f"{Fore.BLUE}poetry run poe clean{Style.RESET_ALL}: Clean all build artifacts\n")
